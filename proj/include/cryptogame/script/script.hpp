#pragma once

// CipherScript: a single linear pipeline of cipher stages.
//
//   program := stage ("|" stage)*
//   stage   := name | name "(" [literal ("," literal)*] ")"
//   literal := integer | hex | string
//
// Integers are decimal with an optional leading '-'. Hex literals are byte
// strings written 0x.. with an even number of digits. Strings are double
// quoted with no escapes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cryptogame/crypto/bytes.hpp"

namespace cryptogame::script {

enum class TokenKind { identifier, integer, hex_literal, string_literal, pipe, lparen, rparen, comma };

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position;

    friend bool operator==(const Token&, const Token&) = default;
};

enum class ErrorKind { lex, parse, unknown_stage, arity, runtime };

std::string_view to_string(ErrorKind kind);

/// Every error carries either a source position (lex, parse, unknown stage,
/// arity) or the index of the failing stage (runtime).
class ScriptError : public std::runtime_error {
public:
    ScriptError(ErrorKind kind, std::size_t position, const std::string& message);

    static ScriptError runtime(std::size_t stage_index, const std::string& message);

    ErrorKind kind() const { return kind_; }
    std::optional<std::size_t> position() const { return position_; }
    std::optional<std::size_t> stage_index() const { return stage_index_; }

private:
    ScriptError(ErrorKind kind, std::optional<std::size_t> position, std::optional<std::size_t> stage,
                const std::string& message);

    ErrorKind kind_;
    std::optional<std::size_t> position_;
    std::optional<std::size_t> stage_index_;
};

using Literal = std::variant<std::int64_t, crypto::Bytes, std::string>;

enum class LiteralType { integer, hex, string };

struct Stage {
    std::string name;
    std::vector<Literal> args;
    /// Offset of the stage name in the source it was parsed from. Not part of equality.
    std::size_t position = 0;

    friend bool operator==(const Stage& a, const Stage& b) { return a.name == b.name && a.args == b.args; }
};

struct ScriptProgram {
    std::vector<Stage> stages;

    friend bool operator==(const ScriptProgram&, const ScriptProgram&) = default;
};

struct StageSignature {
    std::string_view name;
    std::vector<LiteralType> params;
};

/// shift(int), sub(string), rev, xor(hex), lfsr(hex), feistel_dec(hex)
std::span<const StageSignature> registered_stages();

std::vector<Token> tokenize(std::string_view source);

/// `source_length` positions end-of-input errors; defaults to the end of the last token.
ScriptProgram parse(std::span<const Token> tokens, std::optional<std::size_t> source_length = std::nullopt);
ScriptProgram parse(std::string_view source);

/// Stages run left to right. Failures surface as ScriptError(runtime) naming the stage.
crypto::Bytes evaluate(const ScriptProgram& program, crypto::ByteView input);

/// Canonical text: "name(arg, arg) | name".
std::string format(const ScriptProgram& program);

}  // namespace cryptogame::script
