#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "cryptogame/crypto/bytes.hpp"

namespace cryptogame::crypto {

class FeistelKey {
public:
    static constexpr int rounds = 4;

    explicit constexpr FeistelKey(std::uint32_t master)
        : master_(master),
          subkeys_{static_cast<std::uint8_t>(master >> 24), static_cast<std::uint8_t>(master >> 16),
                   static_cast<std::uint8_t>(master >> 8), static_cast<std::uint8_t>(master)} {}

    constexpr std::uint32_t master() const { return master_; }
    constexpr const std::array<std::uint8_t, rounds>& round_subkeys() const { return subkeys_; }

private:
    std::uint32_t master_;
    std::array<std::uint8_t, rounds> subkeys_;
};

/// F(R, K) = rotl8((R ^ K) + 0x55, 2)
std::uint8_t feistel_round_function(std::uint8_t half, std::uint8_t subkey);

/// Feistel network with one round per subkey; the full cipher uses the key's four.
std::uint16_t feistel_encrypt_rounds(std::uint16_t block, std::span<const std::uint8_t> subkeys);

/// 4-round Feistel over 8-bit halves, left half in the high byte.
std::uint16_t feistel_encrypt_block(std::uint16_t block, const FeistelKey& key);
std::uint16_t feistel_decrypt_block(std::uint16_t block, const FeistelKey& key);

/// CBC over 2-byte big-endian blocks. Always pads: one 0x01 byte for odd
/// input, two 0x02 bytes for even input.
Bytes cbc_encrypt(ByteView plaintext, const FeistelKey& key, std::uint16_t iv);

/// Throws CryptoError on a length that is not a positive multiple of 2 and
/// PaddingError when the recovered pad is malformed.
Bytes cbc_decrypt(ByteView ciphertext, const FeistelKey& key, std::uint16_t iv);

}  // namespace cryptogame::crypto
