#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cryptogame::crypto {

std::uint64_t splitmix64(std::uint64_t x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

/// Seeded generator with platform-independent bounded draws. std::mt19937_64's
/// output sequence is fixed by the standard; the distributions are not, so the
/// bounded draw is done here by rejection.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    std::uint8_t byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

    template <typename Container>
    void shuffle(Container& c) {
        for (std::size_t i = c.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
            std::swap(c[i - 1], c[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cryptogame::crypto
