#pragma once

#include <cstdint>

namespace cryptogame::crypto {

/// base^exp mod modulus by square-and-multiply. modulus 0 is rejected.
std::uint64_t modpow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

struct ExtendedGcd {
    std::int64_t g;
    std::int64_t x;
    std::int64_t y;
};

/// a*x + b*y = g
ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b);

/// Inverse of a modulo m in [0, m). Throws when gcd(a, m) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// Trial division.
bool is_prime(std::uint64_t n);

/// Non-negative remainder.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace cryptogame::crypto
