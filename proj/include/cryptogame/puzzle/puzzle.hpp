#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cryptogame/crypto/bytes.hpp"
#include "cryptogame/crypto/elliptic.hpp"

namespace cryptogame::puzzle {

using Clock = std::chrono::system_clock;
using Timestamp = std::chrono::time_point<Clock, std::chrono::milliseconds>;

enum class PuzzleKind {
    caesar,
    mono_sub,
    transposition,
    stream_xor,
    feistel_cbc,
    dh_exchange,
    rsa_small,
    ec_scalar,
    hash_preimage,
    key_escrow,
    script_pipeline,
};

inline constexpr std::array all_kinds{
    PuzzleKind::caesar,      PuzzleKind::mono_sub,    PuzzleKind::transposition, PuzzleKind::stream_xor,
    PuzzleKind::feistel_cbc, PuzzleKind::dh_exchange, PuzzleKind::rsa_small,     PuzzleKind::ec_scalar,
    PuzzleKind::hash_preimage, PuzzleKind::key_escrow, PuzzleKind::script_pipeline,
};

/// "CAESAR", "MONO_SUB", ...
std::string_view to_string(PuzzleKind kind);
std::optional<PuzzleKind> parse_kind(std::string_view name);

enum class AnswerForm { text, integer, hex, point, script };

std::string_view to_string(AnswerForm form);
AnswerForm answer_form_of(PuzzleKind kind);

/// Invalid spec, spec/kind mismatch, or an instance that fails verification.
class PuzzleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Submission that does not fit the answer form. Not counted as an attempt.
class MalformedSubmission : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    friend bool operator==(const Range&, const Range&) = default;
};

// Kind-specific generation bounds. Defaults are the shipped desk-scale values.

struct CaesarParams {
    Range shift{1, 25};
    friend bool operator==(const CaesarParams&, const CaesarParams&) = default;
};

struct SubstitutionParams {
    /// Cipher/plain letter pairs disclosed with the ciphertext.
    int revealed_pairs = 8;
    friend bool operator==(const SubstitutionParams&, const SubstitutionParams&) = default;
};

struct TranspositionParams {
    Range columns{3, 5};
    friend bool operator==(const TranspositionParams&, const TranspositionParams&) = default;
};

struct StreamXorParams {
    Range seed{1, 255};
    friend bool operator==(const StreamXorParams&, const StreamXorParams&) = default;
};

struct FeistelCbcParams {
    friend bool operator==(const FeistelCbcParams&, const FeistelCbcParams&) = default;
};

struct DhExchangeParams {
    std::vector<std::uint64_t> primes{23, 47, 59, 83, 107, 167, 227, 467, 503, 563};
    /// Smallest primitive root of p when absent.
    std::optional<std::uint64_t> generator;
    /// Clipped to [1, p-2]; absent means the full range.
    std::optional<Range> secret_a;
    std::optional<Range> secret_b;
    friend bool operator==(const DhExchangeParams&, const DhExchangeParams&) = default;
};

struct RsaSmallParams {
    std::vector<std::uint64_t> primes{11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::vector<std::uint64_t> exponents{3, 5, 7, 11, 13, 17};
    friend bool operator==(const RsaSmallParams&, const RsaSmallParams&) = default;
};

struct EcScalarParams {
    std::int64_t p = 17;
    std::int64_t a = 2;
    std::int64_t b = 2;
    crypto::EcPoint generator = crypto::EcPoint::affine(5, 1);
    std::int64_t group_order = 19;
    friend bool operator==(const EcScalarParams&, const EcScalarParams&) = default;
};

struct HashPreimageParams {
    int digest_bits = 12;
    int message_bytes = 2;
    friend bool operator==(const HashPreimageParams&, const HashPreimageParams&) = default;
};

struct KeyEscrowParams {
    Range shares{2, 4};
    friend bool operator==(const KeyEscrowParams&, const KeyEscrowParams&) = default;
};

struct ScriptPipelineParams {
    /// Encryption steps drawn from {shift, xor, lfsr, feistel, rev}; shift, when present, runs first.
    std::vector<std::string> steps{"shift", "xor", "rev"};
    friend bool operator==(const ScriptPipelineParams&, const ScriptPipelineParams&) = default;
};

using PuzzleParameters =
    std::variant<CaesarParams, SubstitutionParams, TranspositionParams, StreamXorParams, FeistelCbcParams,
                 DhExchangeParams, RsaSmallParams, EcScalarParams, HashPreimageParams, KeyEscrowParams,
                 ScriptPipelineParams>;

/// Kind whose parameter alternative this is.
PuzzleKind kind_of(const PuzzleParameters& params);
PuzzleParameters default_parameters(PuzzleKind kind);

struct PuzzleSpec {
    std::string id;
    PuzzleKind kind = PuzzleKind::caesar;
    std::vector<std::string> plaintext_pool;
    PuzzleParameters parameters;
    std::string intro_text;
    std::string success_text;
    std::vector<std::string> codex_refs;
    std::array<std::string, 3> hint_texts;
};

bool is_text_kind(PuzzleKind kind);

/// Throws PuzzleError naming the first problem: kind/parameter mismatch, empty
/// or unnormalized pool for a text kind, or bounds outside desk scale.
void validate_spec(const PuzzleSpec& spec);

// Per-kind instance data. Which fields are public is decided by the view
// serializer; the authoring serializer writes everything.

struct CaesarData {
    std::string ciphertext;
    int shift = 0;
};

struct SubstitutionData {
    std::string ciphertext;
    /// (cipher letter, plain letter), disclosed.
    std::vector<std::pair<char, char>> known_pairs;
    std::string key;  // hidden: 26-letter mapping plain -> cipher
};

struct TranspositionData {
    std::string ciphertext;
    int columns = 0;
    std::vector<int> column_order;  // hidden
};

struct StreamXorData {
    crypto::Bytes ciphertext;
    std::uint8_t lfsr_seed = 1;
};

struct FeistelCbcData {
    crypto::Bytes ciphertext;
    std::uint32_t key = 0;
    std::uint16_t iv = 0;
};

struct DhExchangeData {
    std::uint64_t p = 0;
    std::uint64_t g = 0;
    std::uint64_t public_a = 0;
    std::uint64_t public_b = 0;
    std::uint64_t secret_a = 0;  // hidden
    std::uint64_t secret_b = 0;  // hidden
};

struct RsaSmallData {
    std::uint64_t n = 0;
    std::uint64_t e = 0;
    std::uint64_t ciphertext = 0;
    std::uint64_t p = 0;  // hidden
    std::uint64_t q = 0;  // hidden
    std::uint64_t d = 0;  // hidden
};

struct EcScalarData {
    EcScalarParams curve;
    crypto::EcPoint public_a;
    crypto::EcPoint public_b;
    std::int64_t secret_b = 0;  // the player's own key, disclosed
    std::int64_t secret_a = 0;  // hidden
};

struct HashPreimageData {
    std::uint32_t target = 0;
    int digest_bits = 0;
    int message_bytes = 0;
};

struct KeyEscrowData {
    std::vector<crypto::Bytes> shares;
};

struct ScriptPipelineData {
    crypto::Bytes ciphertext;
    /// How the message was enciphered, e.g. "shift(7) | xor(0x3C) | rev".
    std::string recipe;
};

using InstanceData =
    std::variant<CaesarData, SubstitutionData, TranspositionData, StreamXorData, FeistelCbcData, DhExchangeData,
                 RsaSmallData, EcScalarData, HashPreimageData, KeyEscrowData, ScriptPipelineData>;

struct PuzzleInstance {
    std::string spec_id;
    PuzzleKind kind = PuzzleKind::caesar;
    std::uint64_t seed = 0;
    AnswerForm answer_form = AnswerForm::text;
    InstanceData data;
    /// Canonical accepted answer, in the instance's answer form.
    std::string solution;
    /// Underlying plaintext for text-bearing kinds (hidden).
    std::string plaintext;
};

/// Pure function of (spec, seed).
PuzzleInstance generate_instance(const PuzzleSpec& spec, std::uint64_t seed);

/// Uppercase, drop anything that is not a letter or whitespace, collapse runs
/// of whitespace, trim.
std::string normalize_text(std::string_view text);

/// Negative chi-squared of the letter histogram against English, divided by
/// the letter count. Higher reads more like English. Text without letters
/// gets the lowest finite double.
double english_score(std::string_view text);

enum class Verdict { correct, incorrect };
enum class Direction { warmer, colder, neutral };

std::string_view to_string(Verdict v);
std::string_view to_string(Direction d);

struct Feedback {
    Verdict verdict = Verdict::incorrect;
    Direction direction = Direction::neutral;
    std::string message;
};

/// Verdict only (direction neutral). Throws MalformedSubmission when the
/// submission does not fit the answer form.
Feedback check_answer(const PuzzleInstance& instance, std::string_view submission);

struct Attempt {
    std::string answer;
    Timestamp at;
    /// English fitness of the attempt's decryption preview; absent for numeric forms.
    std::optional<double> fitness;
};

class AttemptLog {
public:
    explicit AttemptLog(Timestamp started_at) : started_at_(started_at) {}

    /// Throws std::invalid_argument when `at` precedes the previous attempt or the start.
    void record(Attempt attempt);
    /// Never lowers the recorded tier.
    void take_hint(int tier);

    Timestamp started_at() const { return started_at_; }
    const std::vector<Attempt>& attempts() const { return attempts_; }
    int hints_taken() const { return hints_taken_; }

private:
    Timestamp started_at_;
    std::vector<Attempt> attempts_;
    int hints_taken_ = 0;
};

/// Fitness used for directional feedback, or nullopt for numeric answer forms.
std::optional<double> attempt_fitness(const PuzzleInstance& instance, std::string_view submission);

/// For an incorrect submission: warmer/colder against the previous attempt's
/// fitness; neutral on the first attempt, on ties, and for numeric forms.
Feedback directional_feedback(const PuzzleInstance& instance, const AttemptLog& log, std::string_view new_submission);

struct HintThreshold {
    int tier;
    std::size_t attempts;
    std::chrono::seconds elapsed;
};

inline constexpr std::array<HintThreshold, 3> hint_thresholds{{
    {1, 3, std::chrono::seconds(90)},
    {2, 6, std::chrono::seconds(240)},
    {3, 10, std::chrono::seconds(480)},
}};

/// max(tier by attempts, tier by time) before considering hints already taken.
int hint_tier(std::size_t attempts, std::chrono::milliseconds elapsed);

struct Hint {
    int tier;
    std::string text;
};

std::optional<Hint> hint_for(const PuzzleSpec& spec, const AttemptLog& log, Timestamp now);

struct SolveResult {
    std::string answer;
    /// The independent re-derivation agreed with the stored solution.
    bool verified = false;
    std::string detail;
};

/// Returns the stored solution; when `verify` is set, re-derives it from the
/// challenge by an independent route (brute force, factoring, discrete log,
/// exhaustive search) and reports agreement.
SolveResult reference_solve(const PuzzleInstance& instance, bool verify = true);

/// max(100 - 15*hints - 2*(attempts-1), 10). Throws std::invalid_argument when unsolved.
int score_attempt(const AttemptLog& log, bool solved);

/// Curated spy-message pool; every entry is A-Z and spaces with >= 40 letters.
const std::vector<std::string>& default_plaintext_pool();

/// Short codewords for escrow puzzles.
const std::vector<std::string>& default_codeword_pool();

}  // namespace cryptogame::puzzle
