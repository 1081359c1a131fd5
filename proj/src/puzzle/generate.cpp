#include <algorithm>
#include <numeric>

#include "cryptogame/crypto.hpp"
#include "cryptogame/puzzle/puzzle.hpp"

namespace cryptogame::puzzle {

namespace {

using crypto::Rng;

struct Generator {
    const PuzzleSpec& spec;
    Rng& rng;
    PuzzleInstance& out;

    const std::string& pick_plaintext() {
        const auto& pool = spec.plaintext_pool;
        return pool[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
    }

    void operator()(const CaesarParams& p) {
        const auto& plain = pick_plaintext();
        const int shift = static_cast<int>(rng.uniform(p.shift.lo, p.shift.hi));
        out.plaintext = plain;
        out.solution = plain;
        out.data = CaesarData{crypto::caesar_shift(plain, shift), shift};
    }

    void operator()(const SubstitutionParams& p) {
        const auto& plain = pick_plaintext();
        std::string mapping = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
        rng.shuffle(mapping);
        const crypto::SubstitutionKey key(mapping);
        SubstitutionData data{crypto::substitution_apply(plain, key), {}, mapping};

        std::string letters;
        for (char c : plain) {
            if (c != ' ' && letters.find(c) == std::string::npos) letters.push_back(c);
        }
        std::sort(letters.begin(), letters.end());
        rng.shuffle(letters);
        letters.resize(std::min<std::size_t>(letters.size(), static_cast<std::size_t>(p.revealed_pairs)));
        std::sort(letters.begin(), letters.end());
        for (char plain_letter : letters) data.known_pairs.emplace_back(key.map(plain_letter), plain_letter);

        out.plaintext = plain;
        out.solution = plain;
        out.data = std::move(data);
    }

    void operator()(const TranspositionParams& p) {
        const auto& plain = pick_plaintext();
        std::vector<int> order(static_cast<std::size_t>(rng.uniform(p.columns.lo, p.columns.hi)));
        std::iota(order.begin(), order.end(), 0);
        // A reshuffle that lands on the identity would leave the rows readable.
        do {
            rng.shuffle(order);
        } while (std::is_sorted(order.begin(), order.end()));
        const crypto::TranspositionKey key(order);
        out.plaintext = plain;
        out.solution = plain;
        out.data = TranspositionData{crypto::transposition_encrypt(plain, key), static_cast<int>(order.size()), order};
    }

    void operator()(const StreamXorParams& p) {
        const auto& plain = pick_plaintext();
        const auto seed = static_cast<std::uint8_t>(rng.uniform(p.seed.lo, p.seed.hi));
        const auto bytes = crypto::to_bytes(plain);
        const auto ks = crypto::lfsr_keystream(crypto::LfsrConfig(seed), bytes.size());
        out.plaintext = plain;
        out.solution = plain;
        out.data = StreamXorData{crypto::stream_xor(bytes, ks), seed};
    }

    void operator()(const FeistelCbcParams&) {
        const auto& plain = pick_plaintext();
        const auto key = static_cast<std::uint32_t>(rng.next());
        const auto iv = static_cast<std::uint16_t>(rng.next());
        out.plaintext = plain;
        out.solution = plain;
        out.data = FeistelCbcData{crypto::cbc_encrypt(crypto::to_bytes(plain), crypto::FeistelKey(key), iv), key, iv};
    }

    static std::uint64_t smallest_primitive_root(std::uint64_t p) {
        std::vector<std::uint64_t> factors;
        std::uint64_t m = p - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                factors.push_back(d);
                while (m % d == 0) m /= d;
            }
        }
        if (m > 1) factors.push_back(m);
        for (std::uint64_t g = 2; g < p - 1; ++g) {
            if (std::all_of(factors.begin(), factors.end(), [&](auto q) { return crypto::modpow(g, (p - 1) / q, p) != 1; })) {
                return g;
            }
        }
        throw PuzzleError("no primitive root below p-1 for p=" + std::to_string(p));
    }

    std::uint64_t draw_secret(const std::optional<Range>& range, std::uint64_t p) {
        std::int64_t lo = 1;
        std::int64_t hi = static_cast<std::int64_t>(p) - 2;
        if (range) {
            lo = std::max(lo, range->lo);
            hi = std::min(hi, range->hi);
        }
        return static_cast<std::uint64_t>(rng.uniform(lo, hi));
    }

    void operator()(const DhExchangeParams& p) {
        const auto prime = p.primes[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(p.primes.size()) - 1))];
        const auto g = p.generator.value_or(smallest_primitive_root(prime));
        const crypto::DhParams params(prime, g);
        const auto a = draw_secret(p.secret_a, prime);
        const auto b = draw_secret(p.secret_b, prime);
        DhExchangeData data{prime, g, crypto::dh_public(params, a), crypto::dh_public(params, b), a, b};
        out.solution = std::to_string(crypto::dh_shared(params, a, data.public_b));
        out.data = data;
    }

    void operator()(const RsaSmallParams& p) {
        std::vector<std::uint64_t> primes(p.primes);
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        rng.shuffle(primes);
        const auto prime_p = primes[0];
        const auto prime_q = primes[1];
        const auto phi = (prime_p - 1) * (prime_q - 1);
        std::vector<std::uint64_t> usable;
        for (auto e : p.exponents) {
            if (e >= 2 && e < phi && crypto::gcd(e, phi) == 1) usable.push_back(e);
        }
        const auto e = usable[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(usable.size()) - 1))];
        const auto key = crypto::rsa_keygen_small(prime_p, prime_q, e);
        const auto message = static_cast<std::uint64_t>(rng.uniform(2, static_cast<std::int64_t>(key.n) - 1));
        out.solution = std::to_string(message);
        out.data = RsaSmallData{key.n, key.e, crypto::rsa_apply(message, key.e, key.n), key.p, key.q, key.d};
    }

    void operator()(const EcScalarParams& p) {
        const crypto::EcCurve curve(p.p, p.a, p.b, p.generator, p.group_order);
        const auto a = rng.uniform(1, p.group_order - 1);
        const auto b = rng.uniform(1, p.group_order - 1);
        EcScalarData data{p, crypto::ec_mul(curve, a, curve.generator()), crypto::ec_mul(curve, b, curve.generator()), b, a};
        out.solution = crypto::to_string(crypto::ec_mul(curve, b, data.public_a));
        out.data = data;
    }

    void operator()(const HashPreimageParams& p) {
        crypto::Bytes message(static_cast<std::size_t>(p.message_bytes));
        for (auto& byte : message) byte = rng.byte();
        const auto target = crypto::truncate_digest(crypto::toy_hash(message), p.digest_bits);
        out.solution = crypto::hex_encode(message);
        out.data = HashPreimageData{target, p.digest_bits, p.message_bytes};
    }

    void operator()(const KeyEscrowParams& p) {
        const auto& secret = pick_plaintext();
        const auto n = static_cast<std::size_t>(rng.uniform(p.shares.lo, p.shares.hi));
        auto set = crypto::xor_split(crypto::to_bytes(secret), n, rng.next());
        out.plaintext = secret;
        out.solution = secret;
        out.data = KeyEscrowData{std::move(set.shares)};
    }

    void operator()(const ScriptPipelineParams& p) {
        const auto& plain = pick_plaintext();
        std::vector<std::string> steps(p.steps);
        const bool has_shift = std::find(steps.begin(), steps.end(), "shift") != steps.end();
        std::erase(steps, "shift");
        std::sort(steps.begin(), steps.end());
        rng.shuffle(steps);
        if (has_shift) steps.insert(steps.begin(), "shift");

        crypto::Bytes data = crypto::to_bytes(plain);
        std::vector<std::string> recipe;
        std::vector<std::string> inverse;
        for (const auto& step : steps) {
            if (step == "shift") {
                const auto s = rng.uniform(1, 25);
                data = crypto::to_bytes(crypto::caesar_shift(crypto::to_string(data), s));
                recipe.push_back("shift(" + std::to_string(s) + ")");
                inverse.push_back("shift(" + std::to_string(26 - s) + ")");
            } else if (step == "xor") {
                crypto::Bytes key(static_cast<std::size_t>(rng.uniform(1, 3)));
                for (auto& k : key) k = rng.byte();
                data = crypto::stream_xor(data, crypto::repeat_key(key, data.size()));
                recipe.push_back("xor(0x" + crypto::hex_encode(key) + ")");
                inverse.push_back(recipe.back());
            } else if (step == "lfsr") {
                const auto seed = static_cast<std::uint8_t>(rng.uniform(1, 255));
                data = crypto::stream_xor(data, crypto::lfsr_keystream(crypto::LfsrConfig(seed), data.size()));
                recipe.push_back("lfsr(0x" + crypto::hex_encode(crypto::Bytes{seed}) + ")");
                inverse.push_back(recipe.back());
            } else if (step == "feistel") {
                const auto key = static_cast<std::uint32_t>(rng.next());
                const auto iv = static_cast<std::uint16_t>(rng.next());
                const crypto::Bytes key_bytes{static_cast<std::uint8_t>(key >> 24), static_cast<std::uint8_t>(key >> 16),
                                              static_cast<std::uint8_t>(key >> 8), static_cast<std::uint8_t>(key)};
                const crypto::Bytes iv_bytes{static_cast<std::uint8_t>(iv >> 8), static_cast<std::uint8_t>(iv)};
                auto ct = crypto::cbc_encrypt(data, crypto::FeistelKey(key), iv);
                data = iv_bytes;
                data.insert(data.end(), ct.begin(), ct.end());
                recipe.push_back("feistel_cbc(key 0x" + crypto::hex_encode(key_bytes) + ", iv 0x" +
                                 crypto::hex_encode(iv_bytes) + " prepended)");
                inverse.push_back("feistel_dec(0x" + crypto::hex_encode(key_bytes) + ")");
            } else {
                std::reverse(data.begin(), data.end());
                recipe.push_back("rev");
                inverse.push_back("rev");
            }
        }

        std::string recipe_text;
        for (const auto& r : recipe) recipe_text += (recipe_text.empty() ? "" : " | ") + r;
        std::string script;
        for (auto it = inverse.rbegin(); it != inverse.rend(); ++it) script += (script.empty() ? "" : " | ") + *it;

        out.plaintext = plain;
        out.solution = script;
        out.data = ScriptPipelineData{std::move(data), recipe_text};
    }
};

}  // namespace

PuzzleInstance generate_instance(const PuzzleSpec& spec, std::uint64_t seed) {
    validate_spec(spec);
    PuzzleInstance instance;
    instance.spec_id = spec.id;
    instance.kind = spec.kind;
    instance.seed = seed;
    instance.answer_form = answer_form_of(spec.kind);
    Rng rng(seed ^ crypto::fnv1a64(spec.id));
    std::visit(Generator{spec, rng, instance}, spec.parameters);
    return instance;
}

}  // namespace cryptogame::puzzle
