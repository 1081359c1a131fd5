#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cryptogame/crypto/bytes.hpp"

namespace cryptogame::crypto {

/// n-of-n XOR split: every share is needed to recover the secret.
struct ShareSet {
    std::vector<Bytes> shares;

    std::size_t n() const { return shares.size(); }
};

ShareSet xor_split(ByteView secret, std::size_t n, std::uint64_t seed);

/// XOR of all shares. Throws on mismatched lengths or an empty set.
Bytes xor_combine(const std::vector<Bytes>& shares);

}  // namespace cryptogame::crypto
