#include <algorithm>
#include <set>

#include "cryptogame/crypto/classical.hpp"
#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/number_theory.hpp"
#include "cryptogame/crypto/public_key.hpp"
#include "cryptogame/puzzle/puzzle.hpp"

namespace cryptogame::puzzle {

namespace {

constexpr std::array<std::string_view, 11> kind_names{
    "CAESAR", "MONO_SUB", "TRANSPOSITION", "STREAM_XOR", "FEISTEL_CBC", "DH_EXCHANGE",
    "RSA_SMALL", "EC_SCALAR", "HASH_PREIMAGE", "KEY_ESCROW", "SCRIPT_PIPELINE",
};

const std::set<std::string, std::less<>> script_steps{"shift", "xor", "lfsr", "feistel", "rev"};

[[noreturn]] void fail(const PuzzleSpec& spec, const std::string& what) {
    throw PuzzleError("puzzle '" + spec.id + "': " + what);
}

void require_range(const PuzzleSpec& spec, const char* name, const Range& r, std::int64_t lo, std::int64_t hi) {
    if (r.lo > r.hi || r.lo < lo || r.hi > hi) {
        fail(spec, std::string(name) + " range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                       "] must lie within [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

void validate_params(const PuzzleSpec& spec, const CaesarParams& p) {
    require_range(spec, "shift", p.shift, 1, 25);
}

void validate_params(const PuzzleSpec& spec, const SubstitutionParams& p) {
    if (p.revealed_pairs < 0 || p.revealed_pairs > 26) fail(spec, "revealed_pairs must lie within [0, 26]");
}

void validate_params(const PuzzleSpec& spec, const TranspositionParams& p) {
    require_range(spec, "columns", p.columns, 2, static_cast<std::int64_t>(crypto::TranspositionKey::max_columns));
}

void validate_params(const PuzzleSpec& spec, const StreamXorParams& p) {
    require_range(spec, "seed", p.seed, 1, 255);
}

void validate_params(const PuzzleSpec&, const FeistelCbcParams&) {}

void validate_params(const PuzzleSpec& spec, const DhExchangeParams& p) {
    if (p.primes.empty()) fail(spec, "DH needs at least one prime");
    for (auto prime : p.primes) {
        if (prime < 5) fail(spec, "DH prime " + std::to_string(prime) + " is below 5");
        const auto g = p.generator.value_or(2);
        try {
            crypto::DhParams check(prime, g);
        } catch (const crypto::CryptoError& e) {
            fail(spec, "DH parameters (p=" + std::to_string(prime) + "): " + e.what());
        }
        const auto max_secret = static_cast<std::int64_t>(prime) - 2;
        for (const auto& r : {p.secret_a, p.secret_b}) {
            if (r && (r->lo > r->hi || r->hi < 1 || r->lo > max_secret)) {
                fail(spec, "DH secret range does not intersect [1, p-2] for p=" + std::to_string(prime));
            }
        }
    }
}

void validate_params(const PuzzleSpec& spec, const RsaSmallParams& p) {
    std::set<std::uint64_t> distinct(p.primes.begin(), p.primes.end());
    if (distinct.size() < 2) fail(spec, "RSA needs at least two distinct primes");
    for (auto prime : distinct) {
        if (prime >= 100 || !crypto::is_prime(prime)) fail(spec, "RSA factor " + std::to_string(prime) + " is not a prime below 100");
    }
    if (p.exponents.empty()) fail(spec, "RSA needs candidate exponents");
    for (auto a : distinct) {
        for (auto b : distinct) {
            if (a == b) continue;
            const auto phi = (a - 1) * (b - 1);
            const bool usable = std::any_of(p.exponents.begin(), p.exponents.end(),
                                            [&](auto e) { return e >= 2 && e < phi && crypto::gcd(e, phi) == 1; });
            if (!usable) {
                fail(spec, "no listed exponent is coprime to (p-1)(q-1) for p=" + std::to_string(a) + ", q=" + std::to_string(b));
            }
        }
    }
}

void validate_params(const PuzzleSpec& spec, const EcScalarParams& p) {
    try {
        crypto::EcCurve curve(p.p, p.a, p.b, p.generator, p.group_order);
    } catch (const crypto::CryptoError& e) {
        fail(spec, std::string("curve: ") + e.what());
    }
    if (p.group_order < 3 || !crypto::is_prime(static_cast<std::uint64_t>(p.group_order))) {
        fail(spec, "generator order must be a prime >= 3");
    }
}

void validate_params(const PuzzleSpec& spec, const HashPreimageParams& p) {
    if (p.digest_bits < 1 || p.digest_bits > 16) fail(spec, "digest_bits must lie within [1, 16]");
    if (p.message_bytes < 1 || p.message_bytes > 3) fail(spec, "message_bytes must lie within [1, 3]");
}

void validate_params(const PuzzleSpec& spec, const KeyEscrowParams& p) {
    require_range(spec, "shares", p.shares, 2, 8);
}

void validate_params(const PuzzleSpec& spec, const ScriptPipelineParams& p) {
    if (p.steps.empty()) fail(spec, "script pipeline needs at least one step");
    std::set<std::string> seen;
    for (const auto& step : p.steps) {
        if (!script_steps.count(step)) fail(spec, "unknown script step '" + step + "'");
        if (!seen.insert(step).second) fail(spec, "duplicate script step '" + step + "'");
    }
}

}  // namespace

std::string_view to_string(PuzzleKind kind) {
    return kind_names[static_cast<std::size_t>(kind)];
}

std::optional<PuzzleKind> parse_kind(std::string_view name) {
    for (std::size_t i = 0; i < kind_names.size(); ++i) {
        if (kind_names[i] == name) return static_cast<PuzzleKind>(i);
    }
    return std::nullopt;
}

std::string_view to_string(AnswerForm form) {
    switch (form) {
        case AnswerForm::text: return "text";
        case AnswerForm::integer: return "integer";
        case AnswerForm::hex: return "hex";
        case AnswerForm::point: return "point";
        case AnswerForm::script: return "script";
    }
    return "text";
}

AnswerForm answer_form_of(PuzzleKind kind) {
    switch (kind) {
        case PuzzleKind::dh_exchange:
        case PuzzleKind::rsa_small: return AnswerForm::integer;
        case PuzzleKind::ec_scalar: return AnswerForm::point;
        case PuzzleKind::hash_preimage: return AnswerForm::hex;
        case PuzzleKind::script_pipeline: return AnswerForm::script;
        default: return AnswerForm::text;
    }
}

PuzzleKind kind_of(const PuzzleParameters& params) {
    return static_cast<PuzzleKind>(params.index());
}

PuzzleParameters default_parameters(PuzzleKind kind) {
    switch (kind) {
        case PuzzleKind::caesar: return CaesarParams{};
        case PuzzleKind::mono_sub: return SubstitutionParams{};
        case PuzzleKind::transposition: return TranspositionParams{};
        case PuzzleKind::stream_xor: return StreamXorParams{};
        case PuzzleKind::feistel_cbc: return FeistelCbcParams{};
        case PuzzleKind::dh_exchange: return DhExchangeParams{};
        case PuzzleKind::rsa_small: return RsaSmallParams{};
        case PuzzleKind::ec_scalar: return EcScalarParams{};
        case PuzzleKind::hash_preimage: return HashPreimageParams{};
        case PuzzleKind::key_escrow: return KeyEscrowParams{};
        case PuzzleKind::script_pipeline: return ScriptPipelineParams{};
    }
    return CaesarParams{};
}

bool is_text_kind(PuzzleKind kind) {
    return answer_form_of(kind) == AnswerForm::text || kind == PuzzleKind::script_pipeline;
}

void validate_spec(const PuzzleSpec& spec) {
    if (spec.id.empty()) throw PuzzleError("puzzle spec has an empty id");
    if (kind_of(spec.parameters) != spec.kind) {
        fail(spec, "parameters are for " + std::string(to_string(kind_of(spec.parameters))) + " but kind is " +
                       std::string(to_string(spec.kind)));
    }
    for (std::size_t i = 0; i < spec.hint_texts.size(); ++i) {
        if (spec.hint_texts[i].empty()) fail(spec, "hint tier " + std::to_string(i + 1) + " has no text");
    }
    if (is_text_kind(spec.kind)) {
        if (spec.plaintext_pool.empty()) fail(spec, "text puzzle needs a nonempty plaintext pool");
        for (const auto& msg : spec.plaintext_pool) {
            const bool has_letter = std::any_of(msg.begin(), msg.end(), crypto::Alphabet::contains);
            if (!has_letter || !crypto::is_cipher_text(msg)) {
                fail(spec, "pool message must be uppercase A-Z and spaces: \"" + msg + "\"");
            }
        }
    }
    std::visit([&](const auto& p) { validate_params(spec, p); }, spec.parameters);
}

}  // namespace cryptogame::puzzle
