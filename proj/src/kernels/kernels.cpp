#include "cryptogame/kernels/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <limits>

#include "cryptogame/crypto/rng.hpp"

namespace cryptogame::kernels {

using crypto::Bytes;
using crypto::EcPoint;

std::uint32_t feistel_roundtrip_failures_serial(const crypto::FeistelKey& key) {
    std::uint32_t failures = 0;
    for (std::uint32_t b = 0; b <= 0xFFFF; ++b) {
        const auto block = static_cast<std::uint16_t>(b);
        if (crypto::feistel_decrypt_block(crypto::feistel_encrypt_block(block, key), key) != block) ++failures;
    }
    return failures;
}

std::uint32_t feistel_roundtrip_failures(const crypto::FeistelKey& key) {
    std::uint32_t failures = 0;
#pragma omp parallel for reduction(+ : failures) schedule(static)
    for (std::int32_t b = 0; b <= 0xFFFF; ++b) {
        const auto block = static_cast<std::uint16_t>(b);
        if (crypto::feistel_decrypt_block(crypto::feistel_encrypt_block(block, key), key) != block) ++failures;
    }
    return failures;
}

Bytes preimage_candidate(std::uint64_t index) {
    if (index < 256) return {static_cast<std::uint8_t>(index)};
    index -= 256;
    if (index < 65536) return {static_cast<std::uint8_t>(index >> 8), static_cast<std::uint8_t>(index)};
    index -= 65536;
    return {static_cast<std::uint8_t>(index >> 16), static_cast<std::uint8_t>(index >> 8),
            static_cast<std::uint8_t>(index)};
}

namespace {

bool candidate_matches(std::uint64_t index, std::uint32_t target, int bits) {
    return crypto::truncate_digest(crypto::toy_hash(preimage_candidate(index)), bits) == target;
}

}  // namespace

std::optional<PreimageHit> find_preimage_serial(std::uint32_t target, int bits) {
    for (std::uint64_t i = 0; i < preimage_search_space; ++i) {
        if (candidate_matches(i, target, bits)) return PreimageHit{preimage_candidate(i), i + 1};
    }
    return std::nullopt;
}

std::optional<PreimageHit> find_preimage(std::uint32_t target, int bits) {
    // Chunked so the search stops near the first hit; the minimum index within
    // a chunk keeps the answer identical to the serial scan.
    constexpr std::int64_t chunk = 1 << 14;
    constexpr auto none = std::numeric_limits<std::int64_t>::max();
    const auto total = static_cast<std::int64_t>(preimage_search_space);
    for (std::int64_t base = 0; base < total; base += chunk) {
        const std::int64_t end = std::min(base + chunk, total);
        std::int64_t best = none;
#pragma omp parallel for reduction(min : best) schedule(static)
        for (std::int64_t i = base; i < end; ++i) {
            if (i < best && candidate_matches(static_cast<std::uint64_t>(i), target, bits)) best = i;
        }
        if (best != none) {
            return PreimageHit{preimage_candidate(static_cast<std::uint64_t>(best)), static_cast<std::uint64_t>(best) + 1};
        }
    }
    return std::nullopt;
}

double avalanche_score(std::size_t n_samples, std::size_t input_len, std::uint64_t seed,
                       const crypto::HashFunction& hash) {
    if (n_samples == 0 || input_len == 0) return crypto::avalanche_score(n_samples, input_len, seed, hash);
    std::uint64_t total = 0;
    const auto n = static_cast<std::int64_t>(n_samples);
#pragma omp parallel reduction(+ : total)
    {
        Bytes input(input_len);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            crypto::Rng rng(seed ^ crypto::splitmix64(static_cast<std::uint64_t>(i)));
            for (auto& b : input) b = rng.byte();
            const auto bit = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(input_len * 8) - 1));
            const auto before = hash(input);
            input[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            const auto after = hash(input);
            total += static_cast<std::uint64_t>(std::popcount(before.value ^ after.value));
        }
    }
    return static_cast<double>(total) / static_cast<double>(n_samples);
}

std::vector<EcPoint> enumerate_points(const crypto::EcCurve& curve) {
    std::vector<EcPoint> points{EcPoint::at_infinity()};
    for (std::int64_t x = 0; x < curve.p(); ++x) {
        for (std::int64_t y = 0; y < curve.p(); ++y) {
            const auto candidate = EcPoint::affine(x, y);
            if (curve.contains(candidate)) points.push_back(candidate);
        }
    }
    return points;
}

std::uint64_t associativity_violations_serial(const crypto::EcCurve& curve) {
    const auto points = enumerate_points(curve);
    std::uint64_t violations = 0;
    for (const auto& p : points) {
        for (const auto& q : points) {
            const auto pq = crypto::ec_add(curve, p, q);
            for (const auto& r : points) {
                if (crypto::ec_add(curve, pq, r) != crypto::ec_add(curve, p, crypto::ec_add(curve, q, r))) ++violations;
            }
        }
    }
    return violations;
}

std::uint64_t associativity_violations(const crypto::EcCurve& curve) {
    const auto points = enumerate_points(curve);
    const auto n = static_cast<std::int64_t>(points.size());
    std::uint64_t violations = 0;
#pragma omp parallel for collapse(2) reduction(+ : violations) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            const auto pq = crypto::ec_add(curve, points[i], points[j]);
            for (const auto& r : points) {
                if (crypto::ec_add(curve, pq, r) != crypto::ec_add(curve, points[i], crypto::ec_add(curve, points[j], r))) {
                    ++violations;
                }
            }
        }
    }
    return violations;
}

int thread_count() {
    return omp_get_max_threads();
}

}  // namespace cryptogame::kernels
