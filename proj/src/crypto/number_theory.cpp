#include "cryptogame/crypto/number_theory.hpp"

#include <utility>

#include "cryptogame/crypto/error.hpp"

namespace cryptogame::crypto {

std::uint64_t modpow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
    if (modulus == 0) throw CryptoError("modpow: modulus must be at least 1");
    __extension__ using wide = unsigned __int128;
    std::uint64_t result = 1 % modulus;
    base %= modulus;
    while (exp > 0) {
        if (exp & 1) result = static_cast<std::uint64_t>(static_cast<wide>(result) * base % modulus);
        base = static_cast<std::uint64_t>(static_cast<wide>(base) * base % modulus);
        exp >>= 1;
    }
    return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_x = 1, x = 0;
    std::int64_t old_y = 0, y = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_x = std::exchange(x, old_x - q * x);
        old_y = std::exchange(y, old_y - q * y);
    }
    return {old_r, old_x, old_y};
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    const auto [g, x, y] = extended_gcd(mod_floor(a, m), m);
    (void)y;
    if (g != 1) throw CryptoError("value has no modular inverse");
    return mod_floor(x, m);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace cryptogame::crypto
