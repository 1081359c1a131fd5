#pragma once

#include <cstddef>
#include <array>
#include <cstdint>

#include "cryptogame/crypto/bytes.hpp"

namespace cryptogame::crypto {

/// 8-bit Fibonacci LFSR over the primitive polynomial x^8 + x^6 + x^5 + x^4 + 1.
class LfsrConfig {
public:
    static constexpr int width = 8;
    static constexpr std::array<int, 4> taps{8, 6, 5, 4};

    explicit LfsrConfig(std::uint8_t seed);

    std::uint8_t seed() const { return seed_; }

private:
    std::uint8_t seed_;
};

/// One register step. Returns the next state; `out_bit` receives the LSB of `state`.
std::uint8_t lfsr_step(std::uint8_t state, int& out_bit);

/// Eight steps per byte; output bits are the register LSB, packed MSB-first.
Bytes lfsr_keystream(const LfsrConfig& cfg, std::size_t nbytes);

/// Bytewise XOR of `data` with the prefix of `keystream`. Throws if the keystream is short.
Bytes stream_xor(ByteView data, ByteView keystream);

/// `key` repeated cyclically to `length` bytes. Throws on an empty key.
Bytes repeat_key(ByteView key, std::size_t length);

}  // namespace cryptogame::crypto
