#include <algorithm>
#include <limits>

#include "cryptogame/crypto.hpp"
#include "cryptogame/kernels/kernels.hpp"
#include "cryptogame/puzzle/puzzle.hpp"
#include "cryptogame/script/script.hpp"

namespace cryptogame::puzzle {

namespace {

// Each overload re-derives the answer from the challenge and returns it with a
// short account of how. The caller compares it with the stored solution.
struct Solver {
    const PuzzleInstance& instance;

    std::pair<std::string, std::string> operator()(const CaesarData& d) const {
        int best_shift = 0;
        double best = std::numeric_limits<double>::lowest();
        for (int s = 0; s < 26; ++s) {
            const double score = english_score(crypto::caesar_shift(d.ciphertext, -s));
            if (score > best) {
                best = score;
                best_shift = s;
            }
        }
        return {crypto::caesar_shift(d.ciphertext, -best_shift),
                "frequency brute force picked shift " + std::to_string(best_shift)};
    }

    std::pair<std::string, std::string> operator()(const SubstitutionData& d) const {
        const auto inverse = crypto::substitution_invert(crypto::SubstitutionKey(d.key));
        for (const auto& [cipher, plain] : d.known_pairs) {
            if (inverse.map(cipher) != plain) return {"", "disclosed pair disagrees with the key"};
        }
        return {crypto::substitution_apply(d.ciphertext, inverse), "inverted the substitution key"};
    }

    std::pair<std::string, std::string> operator()(const TranspositionData& d) const {
        const crypto::TranspositionKey key(d.column_order);
        auto padded = crypto::transposition_decrypt(d.ciphertext, key);
        // Padding is trailing filler; the stored plaintext is a prefix of the padded grid.
        const auto& plain = instance.plaintext;
        if (padded.size() >= plain.size() && padded.compare(0, plain.size(), plain) == 0 &&
            std::all_of(padded.begin() + static_cast<std::ptrdiff_t>(plain.size()), padded.end(), [](char c) { return c == 'X'; })) {
            padded.resize(plain.size());
        }
        return {padded, "read columns back in key order"};
    }

    std::pair<std::string, std::string> operator()(const StreamXorData& d) const {
        const auto ks = crypto::lfsr_keystream(crypto::LfsrConfig(d.lfsr_seed), d.ciphertext.size());
        return {crypto::to_string(crypto::stream_xor(d.ciphertext, ks)), "regenerated the LFSR keystream"};
    }

    std::pair<std::string, std::string> operator()(const FeistelCbcData& d) const {
        return {crypto::to_string(crypto::cbc_decrypt(d.ciphertext, crypto::FeistelKey(d.key), d.iv)),
                "CBC-decrypted with the session key"};
    }

    std::pair<std::string, std::string> operator()(const DhExchangeData& d) const {
        // Discrete log of A by walking powers of g.
        std::uint64_t x = 0;
        std::uint64_t acc = 1;
        for (std::uint64_t k = 1; k < d.p; ++k) {
            acc = acc * d.g % d.p;
            if (acc == d.public_a) {
                x = k;
                break;
            }
        }
        if (x == 0) return {"", "no discrete log found for A"};
        return {std::to_string(crypto::modpow(d.public_b, x, d.p)),
                "discrete log a=" + std::to_string(x) + " by exhaustive search"};
    }

    std::pair<std::string, std::string> operator()(const RsaSmallData& d) const {
        std::uint64_t p = 0;
        for (std::uint64_t f = 2; f * f <= d.n; ++f) {
            if (d.n % f == 0) {
                p = f;
                break;
            }
        }
        if (p == 0) return {"", "n did not factor"};
        const auto q = d.n / p;
        const auto phi = static_cast<std::int64_t>((p - 1) * (q - 1));
        const auto priv = static_cast<std::uint64_t>(crypto::mod_inverse(static_cast<std::int64_t>(d.e), phi));
        return {std::to_string(crypto::rsa_apply(d.ciphertext, priv, d.n)),
                "factored n=" + std::to_string(p) + "*" + std::to_string(q)};
    }

    std::pair<std::string, std::string> operator()(const EcScalarData& d) const {
        const crypto::EcCurve curve(d.curve.p, d.curve.a, d.curve.b, d.curve.generator, d.curve.group_order);
        // Recover a by repeated addition, then build (a*b)G the slow way.
        std::int64_t a = -1;
        auto walk = crypto::EcPoint::at_infinity();
        for (std::int64_t k = 0; k < d.curve.group_order; ++k) {
            if (walk == d.public_a) {
                a = k;
                break;
            }
            walk = crypto::ec_add(curve, walk, curve.generator());
        }
        if (a < 0) return {"", "A is not a multiple of G"};
        const auto ab = crypto::mod_floor(a * d.secret_b, d.curve.group_order);
        auto shared = crypto::EcPoint::at_infinity();
        for (std::int64_t k = 0; k < ab; ++k) shared = crypto::ec_add(curve, shared, curve.generator());
        return {crypto::to_string(shared), "recovered a=" + std::to_string(a) + " by repeated addition"};
    }

    std::pair<std::string, std::string> operator()(const HashPreimageData& d) const {
        const auto hit = kernels::find_preimage(d.target, d.digest_bits);
        if (!hit) return {"", "no preimage in the search space"};
        // Any preimage is accepted, so check the stored one on its own terms.
        const auto stored = crypto::hex_decode(instance.solution);
        const bool stored_ok = stored && crypto::truncate_digest(crypto::toy_hash(*stored), d.digest_bits) == d.target;
        return {stored_ok ? instance.solution : crypto::hex_encode(hit->message),
                "exhaustive search found " + crypto::hex_encode(hit->message) + " after " +
                    std::to_string(hit->trials) + " trials"};
    }

    std::pair<std::string, std::string> operator()(const KeyEscrowData& d) const {
        return {crypto::to_string(crypto::xor_combine(d.shares)),
                "XOR-combined " + std::to_string(d.shares.size()) + " shares"};
    }

    std::pair<std::string, std::string> operator()(const ScriptPipelineData& d) const {
        try {
            const auto out = crypto::to_string(script::evaluate(script::parse(instance.solution), d.ciphertext));
            if (out != instance.plaintext) return {"", "stored script does not recover the plaintext"};
            return {instance.solution, "stored script recovers the plaintext"};
        } catch (const script::ScriptError& e) {
            return {"", std::string("stored script failed: ") + e.what()};
        }
    }
};

}  // namespace

SolveResult reference_solve(const PuzzleInstance& instance, bool verify) {
    SolveResult result{instance.solution, false, "not verified"};
    if (!verify) return result;
    try {
        auto [derived, detail] = std::visit(Solver{instance}, instance.data);
        result.detail = std::move(detail);
        if (instance.answer_form == AnswerForm::text) {
            result.verified = !derived.empty() && normalize_text(derived) == normalize_text(instance.solution);
        } else {
            result.verified = !derived.empty() && derived == instance.solution;
        }
        if (result.verified) result.verified = check_answer(instance, instance.solution).verdict == Verdict::correct;
    } catch (const std::exception& e) {
        result.detail = std::string("re-derivation failed: ") + e.what();
    }
    return result;
}

}  // namespace cryptogame::puzzle
