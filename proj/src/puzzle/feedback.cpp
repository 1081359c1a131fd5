#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

#include "cryptogame/crypto.hpp"
#include "cryptogame/puzzle/puzzle.hpp"
#include "cryptogame/script/script.hpp"

namespace cryptogame::puzzle {

namespace {

// Relative letter frequencies of English text, A..Z, in percent.
constexpr std::array<double, 26> english_frequencies{
    8.167, 1.492, 2.782, 4.253, 12.702, 2.228, 2.015, 6.094, 6.966, 0.153, 0.772, 4.025, 2.406,
    6.749, 7.507, 1.929, 0.095, 5.987,  6.327, 9.056, 2.758, 0.978, 2.360, 0.150, 1.974, 0.074,
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::uint64_t parse_integer(std::string_view submission) {
    const auto s = trim(submission);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw MalformedSubmission("expected a non-negative whole number");
    }
    return value;
}

crypto::Bytes parse_hex(std::string_view submission) {
    const auto bytes = crypto::hex_decode(trim(submission));
    if (!bytes) throw MalformedSubmission("expected hex bytes: an even number of 0-9/A-F digits");
    if (bytes->empty()) throw MalformedSubmission("expected at least one hex byte");
    return *bytes;
}

crypto::EcPoint parse_point_answer(std::string_view submission) {
    const auto point = crypto::parse_point(submission);
    if (!point) throw MalformedSubmission("expected a point written (x, y) or INF");
    return *point;
}

script::ScriptProgram parse_script(std::string_view submission) {
    try {
        return script::parse(submission);
    } catch (const script::ScriptError& e) {
        throw MalformedSubmission("CipherScript " + std::string(script::to_string(e.kind())) + " error at position " +
                                  std::to_string(e.position().value_or(0)) + ": " + e.what());
    }
}

std::string normalized_text_answer(std::string_view submission) {
    auto text = normalize_text(submission);
    if (text.empty()) throw MalformedSubmission("expected a decrypted message");
    return text;
}

/// Printable ASCII output of a script run, or nullopt on a runtime error or binary output.
std::optional<std::string> script_output(const script::ScriptProgram& program, const crypto::Bytes& ciphertext) {
    try {
        const auto out = script::evaluate(program, ciphertext);
        const bool printable = std::all_of(out.begin(), out.end(), [](std::uint8_t b) {
            return (b >= 0x20 && b < 0x7F) || b == '\n' || b == '\t';
        });
        if (!printable) return std::nullopt;
        return crypto::to_string(out);
    } catch (const script::ScriptError&) {
        return std::nullopt;
    }
}

const crypto::Bytes& script_ciphertext(const PuzzleInstance& instance) {
    return std::get<ScriptPipelineData>(instance.data).ciphertext;
}

}  // namespace

std::string_view to_string(Verdict v) {
    return v == Verdict::correct ? "correct" : "incorrect";
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::warmer: return "warmer";
        case Direction::colder: return "colder";
        case Direction::neutral: return "neutral";
    }
    return "neutral";
}

std::string normalize_text(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char raw : text) {
        const auto c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            pending_space = !out.empty();
        } else if (std::isalpha(c)) {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::toupper(c)));
        }
    }
    return out;
}

double english_score(std::string_view text) {
    std::array<double, 26> counts{};
    double letters = 0;
    for (char raw : text) {
        const auto c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
        if (crypto::Alphabet::contains(c)) {
            counts[crypto::Alphabet::index(c)] += 1;
            letters += 1;
        }
    }
    if (letters == 0) return std::numeric_limits<double>::lowest();
    double total_freq = 0;
    for (double f : english_frequencies) total_freq += f;
    double chi2 = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = english_frequencies[i] / total_freq * letters;
        const double diff = counts[i] - expected;
        chi2 += diff * diff / expected;
    }
    return -chi2 / letters;
}

Feedback check_answer(const PuzzleInstance& instance, std::string_view submission) {
    bool correct = false;
    switch (instance.answer_form) {
        case AnswerForm::text: {
            const auto answer = normalized_text_answer(submission);
            correct = answer == normalize_text(instance.solution);
            if (!correct && instance.kind == PuzzleKind::transposition) {
                const auto& data = std::get<TranspositionData>(instance.data);
                std::vector<int> identity(static_cast<std::size_t>(data.columns));
                for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
                correct = answer == normalize_text(crypto::transposition_pad(instance.plaintext, crypto::TranspositionKey(identity)));
            }
            break;
        }
        case AnswerForm::integer:
            correct = parse_integer(submission) == parse_integer(instance.solution);
            break;
        case AnswerForm::hex: {
            const auto bytes = parse_hex(submission);
            if (instance.kind == PuzzleKind::hash_preimage) {
                const auto& data = std::get<HashPreimageData>(instance.data);
                correct = crypto::truncate_digest(crypto::toy_hash(bytes), data.digest_bits) == data.target;
            } else {
                correct = bytes == parse_hex(instance.solution);
            }
            break;
        }
        case AnswerForm::point:
            correct = parse_point_answer(submission) == parse_point_answer(instance.solution);
            break;
        case AnswerForm::script: {
            const auto program = parse_script(submission);
            const auto output = script_output(program, script_ciphertext(instance));
            correct = output && normalize_text(*output) == normalize_text(instance.plaintext);
            break;
        }
    }
    if (correct) return {Verdict::correct, Direction::neutral, "Message decrypted."};
    return {Verdict::incorrect, Direction::neutral, "Not quite. Check your work and try again."};
}

std::optional<double> attempt_fitness(const PuzzleInstance& instance, std::string_view submission) {
    switch (instance.answer_form) {
        case AnswerForm::text:
            return english_score(normalize_text(submission));
        case AnswerForm::script: {
            const auto output = script_output(parse_script(submission), script_ciphertext(instance));
            return output ? english_score(*output) : std::numeric_limits<double>::lowest();
        }
        default:
            return std::nullopt;
    }
}

Feedback directional_feedback(const PuzzleInstance& instance, const AttemptLog& log, std::string_view new_submission) {
    Feedback fb{Verdict::incorrect, Direction::neutral, "Not quite. Check your work and try again."};
    const auto fitness = attempt_fitness(instance, new_submission);
    if (!fitness || log.attempts().empty() || !log.attempts().back().fitness) return fb;
    const double previous = *log.attempts().back().fitness;
    if (*fitness > previous) {
        fb.direction = Direction::warmer;
        fb.message = "Warmer: that reads more like a real message than your last try.";
    } else if (*fitness < previous) {
        fb.direction = Direction::colder;
        fb.message = "Colder: that reads less like a real message than your last try.";
    }
    return fb;
}

void AttemptLog::record(Attempt attempt) {
    const Timestamp floor = attempts_.empty() ? started_at_ : attempts_.back().at;
    if (attempt.at < floor) throw std::invalid_argument("attempt timestamps must be nondecreasing");
    attempts_.push_back(std::move(attempt));
}

void AttemptLog::take_hint(int tier) {
    hints_taken_ = std::clamp(std::max(hints_taken_, tier), 0, 3);
}

int hint_tier(std::size_t attempts, std::chrono::milliseconds elapsed) {
    int tier = 0;
    for (const auto& t : hint_thresholds) {
        if (attempts >= t.attempts || elapsed >= t.elapsed) tier = t.tier;
    }
    return tier;
}

std::optional<Hint> hint_for(const PuzzleSpec& spec, const AttemptLog& log, Timestamp now) {
    const auto elapsed = std::max(now - log.started_at(), std::chrono::milliseconds(0));
    const int tier = std::max(hint_tier(log.attempts().size(), elapsed), log.hints_taken());
    if (tier == 0) return std::nullopt;
    return Hint{tier, spec.hint_texts[static_cast<std::size_t>(tier - 1)]};
}

int score_attempt(const AttemptLog& log, bool solved) {
    if (!solved) throw std::invalid_argument("only solved puzzles are scored");
    const auto attempts = static_cast<int>(std::max<std::size_t>(log.attempts().size(), 1));
    return std::max(100 - 15 * log.hints_taken() - 2 * (attempts - 1), 10);
}

}  // namespace cryptogame::puzzle
