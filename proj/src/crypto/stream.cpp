#include "cryptogame/crypto/stream.hpp"

#include "cryptogame/crypto/error.hpp"

namespace cryptogame::crypto {

LfsrConfig::LfsrConfig(std::uint8_t seed) : seed_(seed) {
    if (seed == 0) throw CryptoError("LFSR seed must be nonzero");
}

std::uint8_t lfsr_step(std::uint8_t state, int& out_bit) {
    out_bit = state & 1;
    // Taps 8, 6, 5, 4 of a right-shifting register sit at bits 0, 2, 3, 4.
    const int feedback = (state ^ (state >> 2) ^ (state >> 3) ^ (state >> 4)) & 1;
    return static_cast<std::uint8_t>((state >> 1) | (feedback << 7));
}

Bytes lfsr_keystream(const LfsrConfig& cfg, std::size_t nbytes) {
    Bytes out(nbytes, 0);
    std::uint8_t state = cfg.seed();
    for (auto& byte : out) {
        for (int i = 0; i < 8; ++i) {
            int bit = 0;
            state = lfsr_step(state, bit);
            byte = static_cast<std::uint8_t>(byte << 1 | bit);
        }
    }
    return out;
}

Bytes stream_xor(ByteView data, ByteView keystream) {
    if (keystream.size() < data.size()) {
        throw CryptoError("keystream shorter than data");
    }
    Bytes out(data.begin(), data.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= keystream[i];
    return out;
}

Bytes repeat_key(ByteView key, std::size_t length) {
    if (key.empty()) throw CryptoError("empty XOR key");
    Bytes out(length);
    for (std::size_t i = 0; i < length; ++i) out[i] = key[i % key.size()];
    return out;
}

}  // namespace cryptogame::crypto
