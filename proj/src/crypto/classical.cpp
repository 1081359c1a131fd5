#include "cryptogame/crypto/classical.hpp"

#include <algorithm>

#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/number_theory.hpp"

namespace cryptogame::crypto {

namespace {

void require_cipher_text(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!Alphabet::contains(c) && c != ' ') {
            throw CryptoError("unnormalized text: symbol at offset " + std::to_string(i) +
                              " is not A-Z or space");
        }
    }
}

}  // namespace

bool is_cipher_text(std::string_view text) {
    return std::all_of(text.begin(), text.end(), [](char c) { return Alphabet::contains(c) || c == ' '; });
}

std::string caesar_shift(std::string_view text, long long shift) {
    require_cipher_text(text);
    const auto k = static_cast<int>(mod_floor(shift % 26, 26));
    std::string out(text);
    for (char& c : out) {
        if (c != ' ') c = Alphabet::symbol((Alphabet::index(c) + k) % 26);
    }
    return out;
}

SubstitutionKey::SubstitutionKey(std::string_view mapping) {
    if (mapping.size() != Alphabet::size) {
        throw CryptoError("substitution key must have 26 entries");
    }
    std::array<bool, Alphabet::size> seen{};
    for (std::size_t i = 0; i < Alphabet::size; ++i) {
        const char c = mapping[i];
        if (!Alphabet::contains(c)) throw CryptoError("substitution key entries must be A-Z");
        if (seen[Alphabet::index(c)]) throw CryptoError("substitution key is not a bijection");
        seen[Alphabet::index(c)] = true;
        mapping_[i] = c;
    }
}

SubstitutionKey SubstitutionKey::identity() {
    return SubstitutionKey("ABCDEFGHIJKLMNOPQRSTUVWXYZ");
}

std::string substitution_apply(std::string_view text, const SubstitutionKey& key) {
    require_cipher_text(text);
    std::string out(text);
    for (char& c : out) {
        if (c != ' ') c = key.map(c);
    }
    return out;
}

SubstitutionKey substitution_invert(const SubstitutionKey& key) {
    std::string inverse(Alphabet::size, '?');
    for (int i = 0; i < static_cast<int>(Alphabet::size); ++i) {
        inverse[Alphabet::index(key.map(Alphabet::symbol(i)))] = Alphabet::symbol(i);
    }
    return SubstitutionKey(inverse);
}

TranspositionKey::TranspositionKey(std::vector<int> column_order) : order_(std::move(column_order)) {
    const auto k = order_.size();
    if (k == 0) throw CryptoError("transposition key needs at least one column");
    if (k > max_columns) throw CryptoError("transposition key wider than 12 columns");
    std::vector<bool> seen(k, false);
    for (int c : order_) {
        if (c < 0 || static_cast<std::size_t>(c) >= k || seen[c]) {
            throw CryptoError("transposition column order is not a permutation");
        }
        seen[c] = true;
    }
}

std::string transposition_pad(std::string_view text, const TranspositionKey& key) {
    std::string padded(text);
    const auto k = key.columns();
    while (padded.size() % k != 0) padded.push_back('X');
    return padded;
}

std::string transposition_encrypt(std::string_view text, const TranspositionKey& key) {
    require_cipher_text(text);
    const std::string padded = transposition_pad(text, key);
    const auto k = key.columns();
    const auto rows = padded.size() / k;
    std::string out;
    out.reserve(padded.size());
    for (int column : key.column_order()) {
        for (std::size_t r = 0; r < rows; ++r) out.push_back(padded[r * k + column]);
    }
    return out;
}

std::string transposition_decrypt(std::string_view text, const TranspositionKey& key) {
    require_cipher_text(text);
    const auto k = key.columns();
    if (text.size() % k != 0) {
        throw CryptoError("transposition ciphertext length is not a multiple of the key width");
    }
    const auto rows = text.size() / k;
    std::string out(text.size(), ' ');
    std::size_t pos = 0;
    for (int column : key.column_order()) {
        for (std::size_t r = 0; r < rows; ++r) out[r * k + column] = text[pos++];
    }
    return out;
}

}  // namespace cryptogame::crypto
