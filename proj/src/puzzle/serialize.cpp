#include "cryptogame/puzzle/serialize.hpp"

#include <algorithm>
#include <set>

#include "cryptogame/crypto/bytes.hpp"

namespace cryptogame::puzzle {

namespace {

std::string child(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const char* type_name(const Json& v) {
    return v.type_name();
}

void expect_object(const Json& v, const std::string& path) {
    if (!v.is_object()) throw SchemaError(path, std::string("expected an object, got ") + type_name(v));
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw SchemaError(child(path, key), "unknown field");
        }
    }
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(child(path, key), "missing required field");
    return *it;
}

std::int64_t as_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw SchemaError(path, std::string("expected an integer, got ") + type_name(v));
    return v.get<std::int64_t>();
}

std::uint64_t as_uint(const Json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw SchemaError(path, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, std::string("expected a string, got ") + type_name(v));
    return v.get<std::string>();
}

template <typename T, typename F>
std::vector<T> as_array(const Json& v, const std::string& path, F&& element) {
    if (!v.is_array()) throw SchemaError(path, std::string("expected an array, got ") + type_name(v));
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(element(v[i], index_path(path, i)));
    return out;
}

Range as_range(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) throw SchemaError(path, "expected a [lo, hi] pair");
    return {as_int(v[0], index_path(path, 0)), as_int(v[1], index_path(path, 1))};
}

Json range_json(const Range& r) {
    return Json::array({r.lo, r.hi});
}

crypto::EcPoint as_point(const Json& v, const std::string& path) {
    if (v.is_string()) {
        if (const auto p = crypto::parse_point(v.get<std::string>())) return *p;
    } else if (v.is_array() && v.size() == 2) {
        return crypto::EcPoint::affine(as_int(v[0], index_path(path, 0)), as_int(v[1], index_path(path, 1)));
    }
    throw SchemaError(path, "expected a point as [x, y] or \"INF\"");
}

Json point_json(const crypto::EcPoint& p) {
    if (p.infinity) return "INF";
    return Json::array({p.x, p.y});
}

std::string hex_field(crypto::ByteView bytes) {
    return crypto::hex_encode(bytes);
}

crypto::Bytes as_hex(const Json& v, const std::string& path) {
    const auto bytes = crypto::hex_decode(as_string(v, path));
    if (!bytes) throw SchemaError(path, "expected hex bytes");
    return *bytes;
}

template <typename T>
void read_opt(const Json& obj, const char* key, const std::string& path, T& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    const auto p = child(path, key);
    if constexpr (std::is_same_v<T, Range>) {
        out = as_range(*it, p);
    } else if constexpr (std::is_same_v<T, int>) {
        out = static_cast<int>(as_int(*it, p));
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
        out = as_int(*it, p);
    } else if constexpr (std::is_same_v<T, std::vector<std::uint64_t>>) {
        out = as_array<std::uint64_t>(*it, p, as_uint);
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
        out = as_array<std::string>(*it, p, as_string);
    } else if constexpr (std::is_same_v<T, crypto::EcPoint>) {
        out = as_point(*it, p);
    } else if constexpr (std::is_same_v<T, std::optional<std::uint64_t>>) {
        out = as_uint(*it, p);
    } else if constexpr (std::is_same_v<T, std::optional<Range>>) {
        out = as_range(*it, p);
    } else {
        static_assert(sizeof(T) == 0, "unsupported field type");
    }
}

struct ParamsReader {
    const Json& doc;
    const std::string& path;

    void operator()(CaesarParams& p) const {
        reject_unknown_keys(doc, {"shift"}, path);
        read_opt(doc, "shift", path, p.shift);
    }
    void operator()(SubstitutionParams& p) const {
        reject_unknown_keys(doc, {"revealed_pairs"}, path);
        read_opt(doc, "revealed_pairs", path, p.revealed_pairs);
    }
    void operator()(TranspositionParams& p) const {
        reject_unknown_keys(doc, {"columns"}, path);
        read_opt(doc, "columns", path, p.columns);
    }
    void operator()(StreamXorParams& p) const {
        reject_unknown_keys(doc, {"seed"}, path);
        read_opt(doc, "seed", path, p.seed);
    }
    void operator()(FeistelCbcParams&) const {
        reject_unknown_keys(doc, {}, path);
    }
    void operator()(DhExchangeParams& p) const {
        reject_unknown_keys(doc, {"primes", "generator", "secret_a", "secret_b"}, path);
        read_opt(doc, "primes", path, p.primes);
        read_opt(doc, "generator", path, p.generator);
        read_opt(doc, "secret_a", path, p.secret_a);
        read_opt(doc, "secret_b", path, p.secret_b);
    }
    void operator()(RsaSmallParams& p) const {
        reject_unknown_keys(doc, {"primes", "exponents"}, path);
        read_opt(doc, "primes", path, p.primes);
        read_opt(doc, "exponents", path, p.exponents);
    }
    void operator()(EcScalarParams& p) const {
        reject_unknown_keys(doc, {"p", "a", "b", "generator", "order"}, path);
        read_opt(doc, "p", path, p.p);
        read_opt(doc, "a", path, p.a);
        read_opt(doc, "b", path, p.b);
        read_opt(doc, "generator", path, p.generator);
        read_opt(doc, "order", path, p.group_order);
    }
    void operator()(HashPreimageParams& p) const {
        reject_unknown_keys(doc, {"digest_bits", "message_bytes"}, path);
        read_opt(doc, "digest_bits", path, p.digest_bits);
        read_opt(doc, "message_bytes", path, p.message_bytes);
    }
    void operator()(KeyEscrowParams& p) const {
        reject_unknown_keys(doc, {"shares"}, path);
        read_opt(doc, "shares", path, p.shares);
    }
    void operator()(ScriptPipelineParams& p) const {
        reject_unknown_keys(doc, {"steps"}, path);
        read_opt(doc, "steps", path, p.steps);
    }
};

struct ParamsWriter {
    Json operator()(const CaesarParams& p) const { return {{"shift", range_json(p.shift)}}; }
    Json operator()(const SubstitutionParams& p) const { return {{"revealed_pairs", p.revealed_pairs}}; }
    Json operator()(const TranspositionParams& p) const { return {{"columns", range_json(p.columns)}}; }
    Json operator()(const StreamXorParams& p) const { return {{"seed", range_json(p.seed)}}; }
    Json operator()(const FeistelCbcParams&) const { return Json::object(); }
    Json operator()(const DhExchangeParams& p) const {
        Json j{{"primes", p.primes}};
        if (p.generator) j["generator"] = *p.generator;
        if (p.secret_a) j["secret_a"] = range_json(*p.secret_a);
        if (p.secret_b) j["secret_b"] = range_json(*p.secret_b);
        return j;
    }
    Json operator()(const RsaSmallParams& p) const { return {{"primes", p.primes}, {"exponents", p.exponents}}; }
    Json operator()(const EcScalarParams& p) const {
        return {{"p", p.p}, {"a", p.a}, {"b", p.b}, {"generator", point_json(p.generator)}, {"order", p.group_order}};
    }
    Json operator()(const HashPreimageParams& p) const {
        return {{"digest_bits", p.digest_bits}, {"message_bytes", p.message_bytes}};
    }
    Json operator()(const KeyEscrowParams& p) const { return {{"shares", range_json(p.shares)}}; }
    Json operator()(const ScriptPipelineParams& p) const { return {{"steps", p.steps}}; }
};

// Public challenge fields. Anything marked hidden in the data structs stays out.
struct ViewWriter {
    Json operator()(const CaesarData& d) const { return {{"ciphertext", d.ciphertext}}; }
    Json operator()(const SubstitutionData& d) const {
        Json pairs = Json::array();
        for (const auto& [c, p] : d.known_pairs) pairs.push_back({{"cipher", std::string(1, c)}, {"plain", std::string(1, p)}});
        return {{"ciphertext", d.ciphertext}, {"known_pairs", pairs}};
    }
    Json operator()(const TranspositionData& d) const { return {{"ciphertext", d.ciphertext}, {"columns", d.columns}}; }
    Json operator()(const StreamXorData& d) const {
        return {{"ciphertext_hex", hex_field(d.ciphertext)}, {"lfsr_seed", hex_field(crypto::Bytes{d.lfsr_seed})}};
    }
    Json operator()(const FeistelCbcData& d) const {
        const crypto::Bytes key{static_cast<std::uint8_t>(d.key >> 24), static_cast<std::uint8_t>(d.key >> 16),
                                static_cast<std::uint8_t>(d.key >> 8), static_cast<std::uint8_t>(d.key)};
        const crypto::Bytes iv{static_cast<std::uint8_t>(d.iv >> 8), static_cast<std::uint8_t>(d.iv)};
        return {{"ciphertext_hex", hex_field(d.ciphertext)}, {"key", hex_field(key)}, {"iv", hex_field(iv)}};
    }
    Json operator()(const DhExchangeData& d) const {
        return {{"p", d.p}, {"g", d.g}, {"public_a", d.public_a}, {"public_b", d.public_b}};
    }
    Json operator()(const RsaSmallData& d) const { return {{"n", d.n}, {"e", d.e}, {"ciphertext", d.ciphertext}}; }
    Json operator()(const EcScalarData& d) const {
        return {{"curve", ParamsWriter{}(d.curve)},
                {"public_a", point_json(d.public_a)},
                {"public_b", point_json(d.public_b)},
                {"secret_b", d.secret_b}};
    }
    Json operator()(const HashPreimageData& d) const {
        return {{"target", d.target}, {"digest_bits", d.digest_bits}, {"message_bytes", d.message_bytes}};
    }
    Json operator()(const KeyEscrowData& d) const {
        Json shares = Json::array();
        for (const auto& s : d.shares) shares.push_back(hex_field(s));
        return {{"shares_hex", shares}};
    }
    Json operator()(const ScriptPipelineData& d) const {
        return {{"ciphertext_hex", hex_field(d.ciphertext)}, {"recipe", d.recipe}};
    }
};

struct AuthoringWriter {
    Json operator()(const CaesarData& d) const { return {{"ciphertext", d.ciphertext}, {"shift", d.shift}}; }
    Json operator()(const SubstitutionData& d) const {
        auto j = ViewWriter{}(d);
        j["key"] = d.key;
        return j;
    }
    Json operator()(const TranspositionData& d) const {
        auto j = ViewWriter{}(d);
        j["column_order"] = d.column_order;
        return j;
    }
    Json operator()(const StreamXorData& d) const { return ViewWriter{}(d); }
    Json operator()(const FeistelCbcData& d) const { return ViewWriter{}(d); }
    Json operator()(const DhExchangeData& d) const {
        auto j = ViewWriter{}(d);
        j["secret_a"] = d.secret_a;
        j["secret_b"] = d.secret_b;
        return j;
    }
    Json operator()(const RsaSmallData& d) const {
        auto j = ViewWriter{}(d);
        j["p"] = d.p;
        j["q"] = d.q;
        j["d"] = d.d;
        return j;
    }
    Json operator()(const EcScalarData& d) const {
        auto j = ViewWriter{}(d);
        j["secret_a"] = d.secret_a;
        return j;
    }
    Json operator()(const HashPreimageData& d) const { return ViewWriter{}(d); }
    Json operator()(const KeyEscrowData& d) const { return ViewWriter{}(d); }
    Json operator()(const ScriptPipelineData& d) const { return ViewWriter{}(d); }
};

std::uint8_t as_byte_hex(const Json& v, const std::string& path, std::size_t width) {
    const auto b = as_hex(v, path);
    if (b.size() != width) throw SchemaError(path, "expected " + std::to_string(width) + " hex byte(s)");
    return b.back();
}

std::uint64_t as_be_hex(const Json& v, const std::string& path, std::size_t width) {
    const auto b = as_hex(v, path);
    if (b.size() != width) throw SchemaError(path, "expected " + std::to_string(width) + " hex byte(s)");
    std::uint64_t out = 0;
    for (auto byte : b) out = (out << 8) | byte;
    return out;
}

char as_letter(const Json& v, const std::string& path) {
    const auto s = as_string(v, path);
    if (s.size() != 1 || s[0] < 'A' || s[0] > 'Z') throw SchemaError(path, "expected one uppercase letter");
    return s[0];
}

InstanceData read_data(PuzzleKind kind, const Json& d, const std::string& path) {
    expect_object(d, path);
    auto at = [&](const char* key) -> const Json& { return require(d, key, path); };
    auto p = [&](const char* key) { return child(path, key); };
    switch (kind) {
        case PuzzleKind::caesar:
            return CaesarData{as_string(at("ciphertext"), p("ciphertext")), static_cast<int>(as_int(at("shift"), p("shift")))};
        case PuzzleKind::mono_sub: {
            SubstitutionData out{as_string(at("ciphertext"), p("ciphertext")), {}, as_string(at("key"), p("key"))};
            const auto& pairs = at("known_pairs");
            if (!pairs.is_array()) throw SchemaError(p("known_pairs"), "expected an array");
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto ip = index_path(p("known_pairs"), i);
                expect_object(pairs[i], ip);
                out.known_pairs.emplace_back(as_letter(require(pairs[i], "cipher", ip), child(ip, "cipher")),
                                             as_letter(require(pairs[i], "plain", ip), child(ip, "plain")));
            }
            return out;
        }
        case PuzzleKind::transposition:
            return TranspositionData{as_string(at("ciphertext"), p("ciphertext")),
                                     static_cast<int>(as_int(at("columns"), p("columns"))),
                                     as_array<int>(at("column_order"), p("column_order"),
                                                   [](const Json& v, const std::string& ep) { return static_cast<int>(as_int(v, ep)); })};
        case PuzzleKind::stream_xor:
            return StreamXorData{as_hex(at("ciphertext_hex"), p("ciphertext_hex")), as_byte_hex(at("lfsr_seed"), p("lfsr_seed"), 1)};
        case PuzzleKind::feistel_cbc:
            return FeistelCbcData{as_hex(at("ciphertext_hex"), p("ciphertext_hex")),
                                  static_cast<std::uint32_t>(as_be_hex(at("key"), p("key"), 4)),
                                  static_cast<std::uint16_t>(as_be_hex(at("iv"), p("iv"), 2))};
        case PuzzleKind::dh_exchange:
            return DhExchangeData{as_uint(at("p"), p("p")),           as_uint(at("g"), p("g")),
                                  as_uint(at("public_a"), p("public_a")), as_uint(at("public_b"), p("public_b")),
                                  as_uint(at("secret_a"), p("secret_a")), as_uint(at("secret_b"), p("secret_b"))};
        case PuzzleKind::rsa_small:
            return RsaSmallData{as_uint(at("n"), p("n")), as_uint(at("e"), p("e")), as_uint(at("ciphertext"), p("ciphertext")),
                                as_uint(at("p"), p("p")), as_uint(at("q"), p("q")), as_uint(at("d"), p("d"))};
        case PuzzleKind::ec_scalar: {
            EcScalarParams curve;
            const auto& c = at("curve");
            expect_object(c, p("curve"));
            ParamsReader{c, p("curve")}(curve);
            return EcScalarData{curve, as_point(at("public_a"), p("public_a")), as_point(at("public_b"), p("public_b")),
                                as_int(at("secret_b"), p("secret_b")), as_int(at("secret_a"), p("secret_a"))};
        }
        case PuzzleKind::hash_preimage:
            return HashPreimageData{static_cast<std::uint32_t>(as_uint(at("target"), p("target"))),
                                    static_cast<int>(as_int(at("digest_bits"), p("digest_bits"))),
                                    static_cast<int>(as_int(at("message_bytes"), p("message_bytes")))};
        case PuzzleKind::key_escrow:
            return KeyEscrowData{as_array<crypto::Bytes>(at("shares_hex"), p("shares_hex"), as_hex)};
        case PuzzleKind::script_pipeline:
            return ScriptPipelineData{as_hex(at("ciphertext_hex"), p("ciphertext_hex")), as_string(at("recipe"), p("recipe"))};
    }
    throw SchemaError(path, "unsupported kind");
}

}  // namespace

Json parameters_to_json(const PuzzleParameters& params) {
    return std::visit(ParamsWriter{}, params);
}

PuzzleParameters parameters_from_json(PuzzleKind kind, const Json& doc, const std::string& path) {
    expect_object(doc, path);
    auto params = default_parameters(kind);
    std::visit(ParamsReader{doc, path}, params);
    return params;
}

PuzzleSpec spec_from_json(const Json& doc, const std::string& id, const std::string& path) {
    expect_object(doc, path);
    reject_unknown_keys(doc, {"kind", "parameters", "plaintext_pool", "intro", "success", "codex_refs", "hints"}, path);
    PuzzleSpec spec;
    spec.id = id;
    const auto kind_name = as_string(require(doc, "kind", path), child(path, "kind"));
    const auto kind = parse_kind(kind_name);
    if (!kind) throw SchemaError(child(path, "kind"), "unknown puzzle kind '" + kind_name + "' in level '" + id + "'");
    spec.kind = *kind;
    const auto params = doc.find("parameters");
    spec.parameters = params == doc.end() ? default_parameters(spec.kind)
                                          : parameters_from_json(spec.kind, *params, child(path, "parameters"));
    if (const auto pool = doc.find("plaintext_pool"); pool != doc.end()) {
        spec.plaintext_pool = as_array<std::string>(*pool, child(path, "plaintext_pool"), as_string);
    } else if (spec.kind == PuzzleKind::key_escrow) {
        spec.plaintext_pool = default_codeword_pool();
    } else if (is_text_kind(spec.kind)) {
        spec.plaintext_pool = default_plaintext_pool();
    }
    spec.intro_text = as_string(require(doc, "intro", path), child(path, "intro"));
    spec.success_text = as_string(require(doc, "success", path), child(path, "success"));
    if (const auto refs = doc.find("codex_refs"); refs != doc.end()) {
        spec.codex_refs = as_array<std::string>(*refs, child(path, "codex_refs"), as_string);
    }
    const auto& hints = require(doc, "hints", path);
    const auto hp = child(path, "hints");
    if (!hints.is_array() || hints.size() != 3) throw SchemaError(hp, "expected exactly three hint texts");
    for (std::size_t i = 0; i < 3; ++i) spec.hint_texts[i] = as_string(hints[i], index_path(hp, i));
    return spec;
}

Json spec_to_json(const PuzzleSpec& spec) {
    Json j{{"kind", to_string(spec.kind)}, {"parameters", parameters_to_json(spec.parameters)}};
    if (!spec.plaintext_pool.empty()) j["plaintext_pool"] = spec.plaintext_pool;
    j["intro"] = spec.intro_text;
    j["success"] = spec.success_text;
    j["codex_refs"] = spec.codex_refs;
    j["hints"] = spec.hint_texts;
    return j;
}

Json instance_view_json(const PuzzleInstance& instance) {
    return {{"level", instance.spec_id},
            {"kind", to_string(instance.kind)},
            {"answer_form", to_string(instance.answer_form)},
            {"challenge", std::visit(ViewWriter{}, instance.data)}};
}

Json instance_authoring_json(const PuzzleInstance& instance) {
    return {{"watermark", authoring_watermark},
            {"level", instance.spec_id},
            {"kind", to_string(instance.kind)},
            {"seed", instance.seed},
            {"answer_form", to_string(instance.answer_form)},
            {"data", std::visit(AuthoringWriter{}, instance.data)},
            {"plaintext", instance.plaintext},
            {"solution", instance.solution}};
}

PuzzleInstance instance_from_authoring_json(const Json& doc) {
    expect_object(doc, "");
    reject_unknown_keys(doc, {"watermark", "level", "kind", "seed", "answer_form", "data", "plaintext", "solution"}, "");
    PuzzleInstance inst;
    inst.spec_id = as_string(require(doc, "level", ""), "level");
    const auto kind_name = as_string(require(doc, "kind", ""), "kind");
    const auto kind = parse_kind(kind_name);
    if (!kind) throw SchemaError("kind", "unknown puzzle kind '" + kind_name + "'");
    inst.kind = *kind;
    inst.answer_form = answer_form_of(inst.kind);
    const auto form = as_string(require(doc, "answer_form", ""), "answer_form");
    if (form != to_string(inst.answer_form)) throw SchemaError("answer_form", "does not match kind " + kind_name);
    inst.seed = as_uint(require(doc, "seed", ""), "seed");
    inst.data = read_data(inst.kind, require(doc, "data", ""), "data");
    inst.plaintext = as_string(require(doc, "plaintext", ""), "plaintext");
    inst.solution = as_string(require(doc, "solution", ""), "solution");
    return inst;
}

}  // namespace cryptogame::puzzle
