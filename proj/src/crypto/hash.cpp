#include "cryptogame/crypto/hash.hpp"

#include <bit>

#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/rng.hpp"

namespace cryptogame::crypto {

std::uint32_t toy_hash_compress(std::uint32_t state, std::uint8_t block) {
    const std::uint32_t spread = static_cast<std::uint32_t>(block) * 0x045D9F3Bu;
    return std::rotl(state ^ spread, 7) + 0x9E3779B9u;
}

Digest toy_hash(ByteView data) {
    std::uint32_t state = toy_hash_iv;
    for (std::uint8_t b : data) state = toy_hash_compress(state, b);
    state = toy_hash_compress(state, static_cast<std::uint8_t>(data.size() & 0xFF));
    return Digest{state};
}

std::uint32_t truncate_digest(Digest digest, int bits) {
    if (bits < 1 || bits > 32) throw CryptoError("digest truncation must keep 1..32 bits");
    if (bits == 32) return digest.value;
    return digest.value & ((1u << bits) - 1u);
}

double avalanche_score(std::size_t n_samples, std::size_t input_len, std::uint64_t seed, const HashFunction& hash) {
    if (n_samples == 0) throw CryptoError("avalanche_score needs at least one sample");
    if (input_len == 0) throw CryptoError("avalanche_score needs a non-empty input");
    std::uint64_t total = 0;
    Bytes input(input_len);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng(seed ^ splitmix64(i));
        for (auto& b : input) b = rng.byte();
        const auto bit = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(input_len * 8) - 1));
        const Digest before = hash(input);
        input[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        const Digest after = hash(input);
        total += static_cast<std::uint64_t>(std::popcount(before.value ^ after.value));
    }
    return static_cast<double>(total) / static_cast<double>(n_samples);
}

}  // namespace cryptogame::crypto
