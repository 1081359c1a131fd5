#pragma once

// Exhaustive sweeps used by the solvers and the verification suites. Every
// kernel has a `_serial` reference; the OpenMP version must return exactly the
// same value for the same inputs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cryptogame/crypto/bytes.hpp"
#include "cryptogame/crypto/elliptic.hpp"
#include "cryptogame/crypto/feistel.hpp"
#include "cryptogame/crypto/hash.hpp"

namespace cryptogame::kernels {

/// Number of 16-bit blocks b with decrypt(encrypt(b)) != b. Zero for a sound cipher.
std::uint32_t feistel_roundtrip_failures_serial(const crypto::FeistelKey& key);
std::uint32_t feistel_roundtrip_failures(const crypto::FeistelKey& key);

/// Candidate i of the preimage enumeration: all 1-byte strings, then all
/// 2-byte strings, then 3-byte strings, each block in big-endian order.
crypto::Bytes preimage_candidate(std::uint64_t index);

inline constexpr std::uint64_t preimage_search_space = 256ull + 65536ull + 16777216ull;

struct PreimageHit {
    crypto::Bytes message;
    /// Candidates tried up to and including the hit.
    std::uint64_t trials = 0;
};

/// First candidate whose digest truncated to `bits` equals `target`.
std::optional<PreimageHit> find_preimage_serial(std::uint32_t target, int bits);
std::optional<PreimageHit> find_preimage(std::uint32_t target, int bits);

/// Same sampling as crypto::avalanche_score, split across threads.
double avalanche_score(std::size_t n_samples, std::size_t input_len, std::uint64_t seed,
                       const crypto::HashFunction& hash = crypto::toy_hash);

/// All points of the curve by brute force over F_p x F_p, infinity first.
std::vector<crypto::EcPoint> enumerate_points(const crypto::EcCurve& curve);

/// Count of triples (P, Q, R) of curve points with (P+Q)+R != P+(Q+R).
std::uint64_t associativity_violations_serial(const crypto::EcCurve& curve);
std::uint64_t associativity_violations(const crypto::EcCurve& curve);

/// Threads the OpenMP kernels will use.
int thread_count();

}  // namespace cryptogame::kernels
