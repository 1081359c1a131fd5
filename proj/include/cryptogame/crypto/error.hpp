#pragma once

#include <stdexcept>
#include <string>

namespace cryptogame::crypto {

/// Raised when a primitive is handed input outside its domain
/// (unnormalized text, malformed key, out-of-range secret, ...).
class CryptoError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// CBC decryption found padding bytes that do not describe a valid pad.
class PaddingError : public CryptoError {
public:
    using CryptoError::CryptoError;
};

}  // namespace cryptogame::crypto
