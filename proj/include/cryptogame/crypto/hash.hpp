#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "cryptogame/crypto/bytes.hpp"

namespace cryptogame::crypto {

struct Digest {
    std::uint32_t value = 0;

    friend bool operator==(const Digest&, const Digest&) = default;
};

inline constexpr std::uint32_t toy_hash_iv = 0x811C9DC5u;

/// One Merkle-Damgard step over an 8-bit block.
std::uint32_t toy_hash_compress(std::uint32_t state, std::uint8_t block);

/// Absorbs every byte, then the length mod 256 as a final block.
Digest toy_hash(ByteView data);

/// Low `bits` bits of the digest (1..32).
std::uint32_t truncate_digest(Digest digest, int bits);

using HashFunction = std::function<Digest(ByteView)>;

/// Mean Hamming distance between digests of a random input and the same input
/// with one random bit flipped, over `n_samples` seeded trials.
/// Sample i draws from its own generator derived from (seed, i).
double avalanche_score(std::size_t n_samples, std::size_t input_len, std::uint64_t seed,
                       const HashFunction& hash = toy_hash);

}  // namespace cryptogame::crypto
