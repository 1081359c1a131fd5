#include <cctype>
#include <charconv>

#include "cryptogame/script/script.hpp"

namespace cryptogame::script {

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::identifier: return "identifier";
        case TokenKind::integer: return "integer";
        case TokenKind::hex_literal: return "hex literal";
        case TokenKind::string_literal: return "string literal";
        case TokenKind::pipe: return "'|'";
        case TokenKind::lparen: return "'('";
        case TokenKind::rparen: return "')'";
        case TokenKind::comma: return "','";
    }
    return "token";
}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::lex: return "lex";
        case ErrorKind::parse: return "parse";
        case ErrorKind::unknown_stage: return "unknown-stage";
        case ErrorKind::arity: return "arity";
        case ErrorKind::runtime: return "runtime";
    }
    return "error";
}

ScriptError::ScriptError(ErrorKind kind, std::size_t position, const std::string& message)
    : ScriptError(kind, position, std::nullopt, message) {}

ScriptError::ScriptError(ErrorKind kind, std::optional<std::size_t> position, std::optional<std::size_t> stage,
                         const std::string& message)
    : std::runtime_error(message), kind_(kind), position_(position), stage_index_(stage) {}

ScriptError ScriptError::runtime(std::size_t stage_index, const std::string& message) {
    return ScriptError(ErrorKind::runtime, std::nullopt, stage_index, message);
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = source.size();
    while (i < n) {
        const char c = source[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        switch (c) {
            case '|': tokens.push_back({TokenKind::pipe, "|", start}); ++i; continue;
            case '(': tokens.push_back({TokenKind::lparen, "(", start}); ++i; continue;
            case ')': tokens.push_back({TokenKind::rparen, ")", start}); ++i; continue;
            case ',': tokens.push_back({TokenKind::comma, ",", start}); ++i; continue;
            default: break;
        }
        if (is_ident_start(c)) {
            while (i < n && is_ident_char(source[i])) ++i;
            tokens.push_back({TokenKind::identifier, std::string(source.substr(start, i - start)), start});
            continue;
        }
        if (c == '"') {
            ++i;
            while (i < n && source[i] != '"' && source[i] != '\n') ++i;
            if (i >= n || source[i] != '"') throw ScriptError(ErrorKind::lex, start, "unterminated string literal");
            ++i;
            tokens.push_back({TokenKind::string_literal, std::string(source.substr(start, i - start)), start});
            continue;
        }
        if (c == '0' && i + 1 < n && (source[i + 1] == 'x' || source[i + 1] == 'X')) {
            i += 2;
            while (i < n && std::isxdigit(static_cast<unsigned char>(source[i]))) ++i;
            const std::size_t digits = i - start - 2;
            if (i < n && is_ident_char(source[i])) {
                throw ScriptError(ErrorKind::lex, i, "illegal character in hex literal");
            }
            if (digits == 0) throw ScriptError(ErrorKind::lex, start, "hex literal has no digits");
            if (digits % 2 != 0) throw ScriptError(ErrorKind::lex, start, "hex literal needs an even number of digits");
            tokens.push_back({TokenKind::hex_literal, std::string(source.substr(start, i - start)), start});
            continue;
        }
        if (is_digit(c) || (c == '-' && i + 1 < n && is_digit(source[i + 1]))) {
            ++i;
            while (i < n && is_digit(source[i])) ++i;
            const auto text = source.substr(start, i - start);
            std::int64_t value = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size()) {
                throw ScriptError(ErrorKind::lex, start, "integer literal out of range");
            }
            tokens.push_back({TokenKind::integer, std::string(text), start});
            continue;
        }
        throw ScriptError(ErrorKind::lex, start, std::string("illegal character '") + c + "'");
    }
    return tokens;
}

}  // namespace cryptogame::script
