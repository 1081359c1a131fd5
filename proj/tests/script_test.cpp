#include <gtest/gtest.h>

#include "cryptogame/crypto.hpp"
#include "cryptogame/script/script.hpp"

using namespace cryptogame;
using script::ErrorKind;
using script::TokenKind;

namespace {

ErrorKind error_kind_of(std::string_view source) {
    try {
        script::parse(source);
    } catch (const script::ScriptError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << source;
    return ErrorKind::runtime;
}

std::size_t error_position_of(std::string_view source) {
    try {
        script::parse(source);
    } catch (const script::ScriptError& e) {
        EXPECT_TRUE(e.position().has_value());
        return e.position().value_or(9999);
    }
    ADD_FAILURE() << "no error for: " << source;
    return 9999;
}

// Generates a structurally valid program, independent of the parser.
script::ScriptProgram random_program(crypto::Rng& rng) {
    script::ScriptProgram prog;
    const auto n = rng.uniform(1, 6);
    for (int i = 0; i < n; ++i) {
        script::Stage st;
        switch (rng.uniform(0, 5)) {
            case 0:
                st.name = "shift";
                st.args.emplace_back(static_cast<std::int64_t>(rng.uniform(-100, 100)));
                break;
            case 1: {
                std::string perm = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
                rng.shuffle(perm);
                st.name = "sub";
                st.args.emplace_back(perm);
                break;
            }
            case 2: st.name = "rev"; break;
            case 3: {
                crypto::Bytes key(static_cast<std::size_t>(rng.uniform(1, 6)));
                for (auto& b : key) b = rng.byte();
                st.name = "xor";
                st.args.emplace_back(key);
                break;
            }
            case 4:
                st.name = "lfsr";
                st.args.emplace_back(crypto::Bytes{static_cast<std::uint8_t>(rng.uniform(1, 255))});
                break;
            default: {
                crypto::Bytes key(4);
                for (auto& b : key) b = rng.byte();
                st.name = "feistel_dec";
                st.args.emplace_back(key);
                break;
            }
        }
        prog.stages.push_back(std::move(st));
    }
    return prog;
}

}  // namespace

TEST(Tokenize, EmptySource) {
    EXPECT_TRUE(script::tokenize("").empty());
    EXPECT_TRUE(script::tokenize("   \n\t").empty());
}

TEST(Tokenize, ShiftCall) {
    const auto toks = script::tokenize("shift(3)");
    ASSERT_EQ(toks.size(), 4u);
    EXPECT_EQ(toks[0], (script::Token{TokenKind::identifier, "shift", 0}));
    EXPECT_EQ(toks[1], (script::Token{TokenKind::lparen, "(", 5}));
    EXPECT_EQ(toks[2], (script::Token{TokenKind::integer, "3", 6}));
    EXPECT_EQ(toks[3], (script::Token{TokenKind::rparen, ")", 7}));
}

TEST(Tokenize, XorThenReverse) {
    // xor ( 0xFF ) | rev
    const auto toks = script::tokenize("xor(0xFF) | rev");
    ASSERT_EQ(toks.size(), 6u);
    EXPECT_EQ(toks[2].kind, TokenKind::hex_literal);
    EXPECT_EQ(toks[4].kind, TokenKind::pipe);
    EXPECT_EQ(toks[5].position, 12u);
}

TEST(Tokenize, LexErrorsCarryPositions) {
    auto lex_error_at = [](std::string_view src) {
        try {
            script::tokenize(src);
        } catch (const script::ScriptError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::lex);
            return e.position().value_or(9999);
        }
        ADD_FAILURE() << src;
        return std::size_t{9999};
    };
    EXPECT_EQ(lex_error_at("rev | $"), 6u);
    EXPECT_EQ(lex_error_at("xor(0xF)"), 4u);
    EXPECT_EQ(lex_error_at("xor(0x)"), 4u);
    EXPECT_EQ(lex_error_at("sub(\"ABC"), 4u);
    EXPECT_EQ(lex_error_at("xor(0xFG)"), 7u);
    EXPECT_EQ(lex_error_at("shift(99999999999999999999)"), 6u);
}

TEST(Parse, MinimalAndPipeline) {
    EXPECT_EQ(script::parse("rev").stages.size(), 1u);
    const auto prog = script::parse("shift(3) | shift(23)");
    ASSERT_EQ(prog.stages.size(), 2u);
    EXPECT_EQ(std::get<std::int64_t>(prog.stages[1].args[0]), 23);
}

TEST(Parse, ArityErrorPointsAtClosingParen) {
    EXPECT_EQ(error_kind_of("shift()"), ErrorKind::arity);
    EXPECT_EQ(error_position_of("shift()"), 6u);
    EXPECT_EQ(error_kind_of("rev(1)"), ErrorKind::arity);
    EXPECT_EQ(error_kind_of("shift"), ErrorKind::arity);
    EXPECT_EQ(error_position_of("shift"), 5u);
    EXPECT_EQ(error_kind_of("shift(1, 2)"), ErrorKind::arity);
}

TEST(Parse, DistinctErrorKinds) {
    EXPECT_EQ(error_kind_of(""), ErrorKind::parse);
    EXPECT_EQ(error_position_of(""), 0u);
    EXPECT_EQ(error_kind_of("rot(3)"), ErrorKind::unknown_stage);
    EXPECT_EQ(error_position_of("rev | rot(3)"), 6u);
    EXPECT_EQ(error_kind_of("rev |"), ErrorKind::parse);
    EXPECT_EQ(error_position_of("rev |"), 5u);
    EXPECT_EQ(error_kind_of("rev rev"), ErrorKind::parse);
    EXPECT_EQ(error_position_of("rev rev"), 4u);
    EXPECT_EQ(error_kind_of("shift(3"), ErrorKind::parse);
    EXPECT_EQ(error_position_of("shift(3"), 7u);
    EXPECT_EQ(error_kind_of("shift(0x03)"), ErrorKind::parse);
    EXPECT_EQ(error_position_of("shift(0x03)"), 6u);
    EXPECT_EQ(error_kind_of("lfsr(0x00)"), ErrorKind::parse);
    EXPECT_EQ(error_kind_of("feistel_dec(0x0102)"), ErrorKind::parse);
    EXPECT_EQ(error_kind_of("sub(\"ABC\")"), ErrorKind::parse);
    EXPECT_EQ(error_kind_of("(rev)"), ErrorKind::parse);
}

TEST(Parse, ErrorPositionsStayInsideSource) {
    for (std::string_view src : {"", "shift(", "rev |", "xor(0x1", "shift(1,", "|", "sub(", "lfsr(0x00)"}) {
        try {
            script::parse(src);
            ADD_FAILURE() << src;
        } catch (const script::ScriptError& e) {
            ASSERT_TRUE(e.position().has_value()) << src;
            EXPECT_LE(*e.position(), src.size()) << src;
        }
    }
}

TEST(Format, CanonicalSpacing) {
    script::ScriptProgram prog;
    prog.stages.push_back({"shift", {std::int64_t{3}}, 0});
    EXPECT_EQ(script::format(prog), "shift(3)");
    EXPECT_EQ(script::format(script::parse("  rev|rev ")), "rev | rev");
}

TEST(Format, HexAndStrings) {
    EXPECT_EQ(script::format(script::parse("xor(0xab01)|sub(\"ZYXWVUTSRQPONMLKJIHGFEDCBA\")")),
              "xor(0xAB01) | sub(\"ZYXWVUTSRQPONMLKJIHGFEDCBA\")");
    EXPECT_EQ(script::format(script::parse("rev()")), "rev");
}

TEST(Format, RoundTripOnGeneratedPrograms) {
    crypto::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto prog = random_program(rng);
        const auto text = script::format(prog);
        const auto reparsed = script::parse(text);
        ASSERT_EQ(reparsed, prog) << text;
        ASSERT_EQ(script::format(reparsed), text);
    }
}

TEST(Evaluate, ReverseTwiceIsIdentity) {
    const auto prog = script::parse("rev | rev");
    const crypto::Bytes data{1, 2, 3, 4, 5};
    EXPECT_EQ(script::evaluate(prog, data), data);
}

TEST(Evaluate, ShiftsSumToIdentity) {
    const auto prog = script::parse("shift(3) | shift(23)");
    EXPECT_EQ(crypto::to_string(script::evaluate(prog, crypto::to_bytes("MEET AT NOON"))), "MEET AT NOON");
}

TEST(Evaluate, XorMatchesStreamXor) {
    EXPECT_EQ(script::evaluate(script::parse("xor(0x0F)"), crypto::Bytes{0x41}), crypto::Bytes{0x4E});
    const crypto::Bytes data{1, 2, 3, 4, 5};
    EXPECT_EQ(script::evaluate(script::parse("xor(0x0102)"), data), (crypto::Bytes{0, 0, 2, 6, 4}));
}

TEST(Evaluate, LfsrAndFeistelStagesDelegateToCore) {
    const auto msg = crypto::to_bytes("RENDEZVOUS AT DAWN");
    const auto ks = crypto::lfsr_keystream(crypto::LfsrConfig(0x5A), msg.size());
    EXPECT_EQ(script::evaluate(script::parse("lfsr(0x5A)"), crypto::stream_xor(msg, ks)), msg);

    const crypto::FeistelKey key(0xDEADBEEF);
    auto input = crypto::Bytes{0x12, 0x34};
    const auto ct = crypto::cbc_encrypt(msg, key, 0x1234);
    input.insert(input.end(), ct.begin(), ct.end());
    EXPECT_EQ(script::evaluate(script::parse("feistel_dec(0xDEADBEEF)"), input), msg);
}

TEST(Evaluate, SubstitutionStage) {
    EXPECT_EQ(crypto::to_string(script::evaluate(script::parse("sub(\"ZYXWVUTSRQPONMLKJIHGFEDCBA\")"),
                                                 crypto::to_bytes("AB"))),
              "ZY");
}

TEST(Evaluate, RuntimeErrorsNameTheStage) {
    try {
        script::evaluate(script::parse("rev | feistel_dec(0x00000001)"), crypto::Bytes{0, 0, 1, 2});
        FAIL();
    } catch (const script::ScriptError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::runtime);
        EXPECT_EQ(e.stage_index(), 1u);
    }
    try {
        script::evaluate(script::parse("shift(1)"), crypto::to_bytes("lower"));
        FAIL();
    } catch (const script::ScriptError& e) {
        EXPECT_EQ(e.stage_index(), 0u);
    }
}

TEST(Evaluate, DeterministicOnRandomPrograms) {
    crypto::Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const auto prog = random_program(rng);
        crypto::Bytes input(static_cast<std::size_t>(rng.uniform(0, 20)));
        for (auto& b : input) b = rng.byte();
        auto run = [&]() -> std::optional<crypto::Bytes> {
            try {
                return script::evaluate(prog, input);
            } catch (const script::ScriptError& e) {
                EXPECT_EQ(e.kind(), ErrorKind::runtime);
                EXPECT_TRUE(e.stage_index().has_value());
                return std::nullopt;
            }
        };
        EXPECT_EQ(run(), run());
    }
}
