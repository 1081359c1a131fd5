#include "cryptogame/crypto/public_key.hpp"

#include <string>

#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/number_theory.hpp"

namespace cryptogame::crypto {

DhParams::DhParams(std::uint64_t p, std::uint64_t g) : p_(p), g_(g) {
    if (p > max_prime || !is_prime(p)) throw CryptoError("DH modulus must be a prime <= 10000");
    if (g <= 1 || g >= p - 1) throw CryptoError("DH generator must lie in [2, p-2]");
}

namespace {

void require_secret(const DhParams& params, std::uint64_t secret) {
    if (secret < 1 || secret > params.p() - 2) {
        throw CryptoError("DH secret " + std::to_string(secret) + " outside [1, p-2]");
    }
}

}  // namespace

std::uint64_t dh_public(const DhParams& params, std::uint64_t secret) {
    require_secret(params, secret);
    return modpow(params.g(), secret, params.p());
}

std::uint64_t dh_shared(const DhParams& params, std::uint64_t my_secret, std::uint64_t their_public) {
    require_secret(params, my_secret);
    if (their_public == 0 || their_public >= params.p()) {
        throw CryptoError("DH public value outside [1, p-1]");
    }
    return modpow(their_public, my_secret, params.p());
}

RsaToyKey rsa_keygen_small(std::uint64_t p, std::uint64_t q, std::uint64_t e) {
    if (p == q) throw CryptoError("RSA primes must be distinct");
    if (p >= 100 || q >= 100 || !is_prime(p) || !is_prime(q)) {
        throw CryptoError("RSA factors must be primes below 100");
    }
    const std::uint64_t phi = (p - 1) * (q - 1);
    if (e < 2 || e >= phi) throw CryptoError("RSA exponent must lie in [2, phi)");
    if (gcd(e, phi) != 1) throw CryptoError("RSA exponent is not coprime to (p-1)(q-1)");
    const auto d = static_cast<std::uint64_t>(mod_inverse(static_cast<std::int64_t>(e), static_cast<std::int64_t>(phi)));
    return {p, q, p * q, e, d};
}

std::uint64_t rsa_apply(std::uint64_t m, std::uint64_t exponent, std::uint64_t n) {
    if (m >= n) throw CryptoError("RSA message must be smaller than the modulus");
    return modpow(m, exponent, n);
}

}  // namespace cryptogame::crypto
