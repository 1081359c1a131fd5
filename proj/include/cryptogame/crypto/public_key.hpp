#pragma once

#include <cstdint>

namespace cryptogame::crypto {

class DhParams {
public:
    static constexpr std::uint64_t max_prime = 10000;

    /// p prime (trial division), p <= 10000, 1 < g < p-1.
    DhParams(std::uint64_t p, std::uint64_t g);

    std::uint64_t p() const { return p_; }
    std::uint64_t g() const { return g_; }

private:
    std::uint64_t p_;
    std::uint64_t g_;
};

/// g^secret mod p, secret in [1, p-2].
std::uint64_t dh_public(const DhParams& params, std::uint64_t secret);

/// their_public^my_secret mod p.
std::uint64_t dh_shared(const DhParams& params, std::uint64_t my_secret, std::uint64_t their_public);

struct RsaToyKey {
    std::uint64_t p;
    std::uint64_t q;
    std::uint64_t n;
    std::uint64_t e;
    std::uint64_t d;

    std::uint64_t phi() const { return (p - 1) * (q - 1); }
};

/// Distinct primes below 100 and e coprime to (p-1)(q-1); d via extended Euclid.
RsaToyKey rsa_keygen_small(std::uint64_t p, std::uint64_t q, std::uint64_t e);

/// m^exponent mod n, with 0 <= m < n.
std::uint64_t rsa_apply(std::uint64_t m, std::uint64_t exponent, std::uint64_t n);

}  // namespace cryptogame::crypto
