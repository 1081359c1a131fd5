#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cryptogame::crypto {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

Bytes to_bytes(std::string_view text);
std::string to_string(ByteView bytes);

/// Uppercase hex, no prefix.
std::string hex_encode(ByteView bytes);

/// Accepts an optional 0x/0X prefix and either case. Returns nullopt on an
/// odd digit count or a non-hex character.
std::optional<Bytes> hex_decode(std::string_view hex);

}  // namespace cryptogame::crypto
