#include <algorithm>
#include <charconv>

#include "cryptogame/crypto/classical.hpp"
#include "cryptogame/crypto/error.hpp"
#include "cryptogame/script/script.hpp"

namespace cryptogame::script {

std::span<const StageSignature> registered_stages() {
    static const std::vector<StageSignature> stages{
        {"shift", {LiteralType::integer}},
        {"sub", {LiteralType::string}},
        {"rev", {}},
        {"xor", {LiteralType::hex}},
        {"lfsr", {LiteralType::hex}},
        {"feistel_dec", {LiteralType::hex}},
    };
    return stages;
}

namespace {

const StageSignature* find_stage(std::string_view name) {
    const auto stages = registered_stages();
    const auto it = std::find_if(stages.begin(), stages.end(), [&](const auto& s) { return s.name == name; });
    return it == stages.end() ? nullptr : &*it;
}

std::string_view type_name(LiteralType t) {
    switch (t) {
        case LiteralType::integer: return "an integer";
        case LiteralType::hex: return "a hex literal";
        case LiteralType::string: return "a string";
    }
    return "a literal";
}

LiteralType type_of(const Literal& lit) {
    return static_cast<LiteralType>(lit.index());
}

class Parser {
public:
    Parser(std::span<const Token> tokens, std::size_t end) : tokens_(tokens), end_(end) {}

    ScriptProgram program() {
        ScriptProgram prog;
        prog.stages.push_back(stage());
        while (peek_is(TokenKind::pipe)) {
            ++pos_;
            prog.stages.push_back(stage());
        }
        if (pos_ < tokens_.size()) {
            throw ScriptError(ErrorKind::parse, tokens_[pos_].position,
                              "expected '|' or end of program, found " + describe(tokens_[pos_]));
        }
        return prog;
    }

private:
    Stage stage() {
        if (pos_ >= tokens_.size()) throw ScriptError(ErrorKind::parse, end_, "expected a stage name");
        const Token& name = tokens_[pos_];
        if (name.kind != TokenKind::identifier) {
            throw ScriptError(ErrorKind::parse, name.position, "expected a stage name, found " + describe(name));
        }
        ++pos_;
        const StageSignature* sig = find_stage(name.lexeme);
        if (sig == nullptr) throw ScriptError(ErrorKind::unknown_stage, name.position, "unknown stage '" + name.lexeme + "'");

        Stage st{name.lexeme, {}, name.position};
        std::vector<std::size_t> arg_positions;
        std::size_t arity_position = name.position + name.lexeme.size();
        if (peek_is(TokenKind::lparen)) {
            ++pos_;
            if (!peek_is(TokenKind::rparen)) {
                arg_positions.push_back(current_position());
                st.args.push_back(literal());
                while (peek_is(TokenKind::comma)) {
                    ++pos_;
                    arg_positions.push_back(current_position());
                    st.args.push_back(literal());
                }
            }
            if (!peek_is(TokenKind::rparen)) {
                throw ScriptError(ErrorKind::parse, current_position(), "expected ',' or ')'");
            }
            arity_position = tokens_[pos_].position;
            ++pos_;
        }

        if (st.args.size() != sig->params.size()) {
            throw ScriptError(ErrorKind::arity, arity_position,
                              "stage '" + st.name + "' takes " + std::to_string(sig->params.size()) +
                                  " argument(s), got " + std::to_string(st.args.size()));
        }
        for (std::size_t i = 0; i < st.args.size(); ++i) {
            if (type_of(st.args[i]) != sig->params[i]) {
                throw ScriptError(ErrorKind::parse, arg_positions[i],
                                  "stage '" + st.name + "' expects " + std::string(type_name(sig->params[i])));
            }
            check_value(st.name, st.args[i], arg_positions[i]);
        }
        return st;
    }

    static void check_value(const std::string& stage, const Literal& arg, std::size_t position) {
        if (stage == "sub") {
            try {
                crypto::SubstitutionKey key(std::get<std::string>(arg));
            } catch (const crypto::CryptoError&) {
                throw ScriptError(ErrorKind::parse, position, "sub needs a 26-letter permutation of A-Z");
            }
        } else if (stage == "lfsr") {
            const auto& bytes = std::get<crypto::Bytes>(arg);
            if (bytes.size() != 1 || bytes[0] == 0) {
                throw ScriptError(ErrorKind::parse, position, "lfsr needs a single nonzero seed byte");
            }
        } else if (stage == "feistel_dec") {
            if (std::get<crypto::Bytes>(arg).size() != 4) {
                throw ScriptError(ErrorKind::parse, position, "feistel_dec needs a 4-byte key");
            }
        }
    }

    Literal literal() {
        if (pos_ >= tokens_.size()) throw ScriptError(ErrorKind::parse, end_, "expected a literal");
        const Token& tok = tokens_[pos_];
        switch (tok.kind) {
            case TokenKind::integer: {
                ++pos_;
                std::int64_t value = 0;
                std::from_chars(tok.lexeme.data(), tok.lexeme.data() + tok.lexeme.size(), value);
                return value;
            }
            case TokenKind::hex_literal:
                ++pos_;
                return *crypto::hex_decode(tok.lexeme);
            case TokenKind::string_literal:
                ++pos_;
                return tok.lexeme.substr(1, tok.lexeme.size() - 2);
            default:
                throw ScriptError(ErrorKind::parse, tok.position, "expected a literal, found " + describe(tok));
        }
    }

    bool peek_is(TokenKind kind) const { return pos_ < tokens_.size() && tokens_[pos_].kind == kind; }

    std::size_t current_position() const { return pos_ < tokens_.size() ? tokens_[pos_].position : end_; }

    static std::string describe(const Token& tok) {
        return std::string(to_string(tok.kind)) + " '" + tok.lexeme + "'";
    }

    std::span<const Token> tokens_;
    std::size_t end_;
    std::size_t pos_ = 0;
};

}  // namespace

ScriptProgram parse(std::span<const Token> tokens, std::optional<std::size_t> source_length) {
    std::size_t end = 0;
    if (source_length) {
        end = *source_length;
    } else if (!tokens.empty()) {
        end = tokens.back().position + tokens.back().lexeme.size();
    }
    return Parser(tokens, end).program();
}

ScriptProgram parse(std::string_view source) {
    const auto tokens = tokenize(source);
    return parse(tokens, source.size());
}

std::string format(const ScriptProgram& program) {
    std::string out;
    for (std::size_t i = 0; i < program.stages.size(); ++i) {
        const Stage& st = program.stages[i];
        if (i > 0) out += " | ";
        out += st.name;
        if (st.args.empty()) continue;
        out += '(';
        for (std::size_t j = 0; j < st.args.size(); ++j) {
            if (j > 0) out += ", ";
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::int64_t>) {
                        out += std::to_string(v);
                    } else if constexpr (std::is_same_v<T, crypto::Bytes>) {
                        out += "0x" + crypto::hex_encode(v);
                    } else {
                        out += '"' + v + '"';
                    }
                },
                st.args[j]);
        }
        out += ')';
    }
    return out;
}

}  // namespace cryptogame::script
