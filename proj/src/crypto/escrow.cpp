#include "cryptogame/crypto/escrow.hpp"

#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/rng.hpp"

namespace cryptogame::crypto {

ShareSet xor_split(ByteView secret, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw CryptoError("escrow needs at least two shares");
    Rng rng(seed);
    ShareSet set;
    Bytes last(secret.begin(), secret.end());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Bytes share(secret.size());
        for (std::size_t j = 0; j < share.size(); ++j) {
            share[j] = rng.byte();
            last[j] ^= share[j];
        }
        set.shares.push_back(std::move(share));
    }
    set.shares.push_back(std::move(last));
    return set;
}

Bytes xor_combine(const std::vector<Bytes>& shares) {
    if (shares.empty()) throw CryptoError("no shares to combine");
    Bytes out(shares.front().size(), 0);
    for (const auto& share : shares) {
        if (share.size() != out.size()) throw CryptoError("escrow shares have mismatched lengths");
        for (std::size_t j = 0; j < out.size(); ++j) out[j] ^= share[j];
    }
    return out;
}

}  // namespace cryptogame::crypto
