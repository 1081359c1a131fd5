#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cryptogame::crypto {

/// The 26-letter symbol space shared by every text cipher.
struct Alphabet {
    static constexpr std::size_t size = 26;
    static constexpr bool contains(char c) { return c >= 'A' && c <= 'Z'; }
    static constexpr int index(char c) { return c - 'A'; }
    static constexpr char symbol(int i) { return static_cast<char>('A' + i); }
};

/// True when `text` holds only A-Z and spaces, the input domain of the text ciphers.
bool is_cipher_text(std::string_view text);

/// Rotates each letter by `shift` (any integer, reduced mod 26). Spaces pass through.
/// Throws CryptoError on any symbol other than A-Z or space.
std::string caesar_shift(std::string_view text, long long shift);

class SubstitutionKey {
public:
    /// `mapping[i]` is the image of letter i. Must be a permutation of A-Z.
    explicit SubstitutionKey(std::string_view mapping);

    static SubstitutionKey identity();

    char map(char letter) const { return mapping_[Alphabet::index(letter)]; }
    std::string mapping() const { return {mapping_.begin(), mapping_.end()}; }

    friend bool operator==(const SubstitutionKey&, const SubstitutionKey&) = default;

private:
    std::array<char, Alphabet::size> mapping_{};
};

std::string substitution_apply(std::string_view text, const SubstitutionKey& key);
SubstitutionKey substitution_invert(const SubstitutionKey& key);

class TranspositionKey {
public:
    static constexpr std::size_t max_columns = 12;

    /// `column_order[j]` names the column read j-th. Must be a permutation of 0..k-1, 1 <= k <= 12.
    explicit TranspositionKey(std::vector<int> column_order);

    std::size_t columns() const { return order_.size(); }
    const std::vector<int>& column_order() const { return order_; }

    friend bool operator==(const TranspositionKey&, const TranspositionKey&) = default;

private:
    std::vector<int> order_;
};

/// Pads `text` with 'X' up to a multiple of the column count.
std::string transposition_pad(std::string_view text, const TranspositionKey& key);

/// Columnar transposition: write row-wise into k columns (after padding), read
/// the columns in key order.
std::string transposition_encrypt(std::string_view text, const TranspositionKey& key);

/// Inverse of transposition_encrypt. Returns the padded plaintext; the input
/// length must be a multiple of the column count.
std::string transposition_decrypt(std::string_view text, const TranspositionKey& key);

}  // namespace cryptogame::crypto
