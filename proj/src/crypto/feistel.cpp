#include "cryptogame/crypto/feistel.hpp"

#include <bit>

#include "cryptogame/crypto/error.hpp"

namespace cryptogame::crypto {

std::uint8_t feistel_round_function(std::uint8_t half, std::uint8_t subkey) {
    const auto mixed = static_cast<std::uint8_t>((half ^ subkey) + 0x55);
    return std::rotl(mixed, 2);
}

std::uint16_t feistel_encrypt_rounds(std::uint16_t block, std::span<const std::uint8_t> subkeys) {
    auto left = static_cast<std::uint8_t>(block >> 8);
    auto right = static_cast<std::uint8_t>(block);
    for (std::uint8_t k : subkeys) {
        const auto next_right = static_cast<std::uint8_t>(left ^ feistel_round_function(right, k));
        left = right;
        right = next_right;
    }
    return static_cast<std::uint16_t>(left << 8 | right);
}

std::uint16_t feistel_encrypt_block(std::uint16_t block, const FeistelKey& key) {
    return feistel_encrypt_rounds(block, key.round_subkeys());
}

std::uint16_t feistel_decrypt_block(std::uint16_t block, const FeistelKey& key) {
    auto left = static_cast<std::uint8_t>(block >> 8);
    auto right = static_cast<std::uint8_t>(block);
    const auto& subkeys = key.round_subkeys();
    for (auto it = subkeys.rbegin(); it != subkeys.rend(); ++it) {
        const auto prev_left = static_cast<std::uint8_t>(right ^ feistel_round_function(left, *it));
        right = left;
        left = prev_left;
    }
    return static_cast<std::uint16_t>(left << 8 | right);
}

Bytes cbc_encrypt(ByteView plaintext, const FeistelKey& key, std::uint16_t iv) {
    Bytes padded(plaintext.begin(), plaintext.end());
    const std::uint8_t pad = padded.size() % 2 == 0 ? 2 : 1;
    padded.insert(padded.end(), pad, pad);

    Bytes out;
    out.reserve(padded.size());
    std::uint16_t chain = iv;
    for (std::size_t i = 0; i < padded.size(); i += 2) {
        const auto block = static_cast<std::uint16_t>(padded[i] << 8 | padded[i + 1]);
        chain = feistel_encrypt_block(block ^ chain, key);
        out.push_back(static_cast<std::uint8_t>(chain >> 8));
        out.push_back(static_cast<std::uint8_t>(chain));
    }
    return out;
}

Bytes cbc_decrypt(ByteView ciphertext, const FeistelKey& key, std::uint16_t iv) {
    if (ciphertext.empty() || ciphertext.size() % 2 != 0) {
        throw CryptoError("CBC ciphertext length must be a positive multiple of 2");
    }
    Bytes out;
    out.reserve(ciphertext.size());
    std::uint16_t chain = iv;
    for (std::size_t i = 0; i < ciphertext.size(); i += 2) {
        const auto block = static_cast<std::uint16_t>(ciphertext[i] << 8 | ciphertext[i + 1]);
        const std::uint16_t plain = feistel_decrypt_block(block, key) ^ chain;
        chain = block;
        out.push_back(static_cast<std::uint8_t>(plain >> 8));
        out.push_back(static_cast<std::uint8_t>(plain));
    }
    const std::uint8_t pad = out.back();
    if (pad < 1 || pad > 2 || (pad == 2 && out[out.size() - 2] != 2)) {
        throw PaddingError("invalid CBC padding");
    }
    out.resize(out.size() - pad);
    return out;
}

}  // namespace cryptogame::crypto
