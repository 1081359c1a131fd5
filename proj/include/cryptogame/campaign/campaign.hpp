#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cryptogame/puzzle/puzzle.hpp"
#include "cryptogame/puzzle/serialize.hpp"

namespace cryptogame::campaign {

using puzzle::Json;

enum class ErrorKind { schema, dangling_reference, cycle, unsolvable, coverage };

std::string_view to_string(ErrorKind kind);

/// Campaign document problem, with a path to the offending field.
class CampaignError : public puzzle::SchemaError {
public:
    CampaignError(ErrorKind kind, std::string path, const std::string& message)
        : SchemaError(std::move(path), message), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct TopicGroup {
    std::string title;
    std::vector<std::string> topics;
};

/// Topic groups in teaching order, each with its leaf topics. Chapter titles
/// must match the group titles one to one.
struct CoverageManifest {
    std::vector<TopicGroup> groups;

    bool has_topic(std::string_view topic) const;
};

const CoverageManifest& default_manifest();
/// {"groups": [{"title": ..., "topics": [...]}, ...]}
CoverageManifest manifest_from_json(const Json& doc);

struct Chapter {
    std::string title;
    std::vector<std::string> levels;
};

struct LevelNode {
    std::string id;
    puzzle::PuzzleSpec spec;
    std::vector<std::string> prerequisites;
    std::string story_intro;
    std::string story_outro;
    std::vector<std::string> topics;
};

struct CodexEntry {
    std::string id;
    std::string title;
    std::string body;
    std::string unlocked_by;
    std::vector<std::string> topics;
};

class Campaign {
public:
    static constexpr int format_version = 1;

    int version = format_version;
    std::vector<Chapter> chapters;
    std::vector<LevelNode> levels;
    std::vector<CodexEntry> codex;

    const LevelNode* find_level(std::string_view id) const;
    const CodexEntry* find_codex(std::string_view id) const;
    /// Level ids in chapter order.
    std::vector<std::string> level_order() const;
};

/// Seeds used to prove every level solvable at load time.
inline constexpr std::array<std::uint64_t, 5> probe_seeds{0, 1, 2, 3, 4};

struct LevelVerification {
    std::string level_id;
    std::size_t seeds_checked = 0;
    bool ok = false;
    std::string detail;
};

/// Generates, reference-solves and checks the level for each seed.
LevelVerification verify_level(const LevelNode& level, std::span<const std::uint64_t> seeds);

/// Parses and fully validates a campaign document: schema, references, cycles,
/// earlier-only prerequisites, chapter titles against the manifest groups,
/// codex wiring, and solvability on the probe seeds.
Campaign load_campaign(const Json& doc, const CoverageManifest& manifest = default_manifest());
Campaign load_campaign_file(const std::filesystem::path& path, const CoverageManifest& manifest = default_manifest());

/// Leaf topics covered by no level and no codex entry, as "Group / Topic".
std::vector<std::string> uncovered_topics(const Campaign& campaign, const CoverageManifest& manifest);

enum class LevelStatus { locked, unlocked, completed };

std::string_view to_string(LevelStatus status);
std::optional<LevelStatus> parse_level_status(std::string_view name);

struct LevelRecord {
    LevelStatus status = LevelStatus::locked;
    std::optional<int> best_score;
    std::int64_t attempts = 0;
    std::int64_t total_time_ms = 0;

    friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

struct PlayerProfile {
    static constexpr int save_version = 1;

    int version = save_version;
    std::string player_id;
    std::map<std::string, LevelRecord> levels;
    std::set<std::string> codex;
    std::string current;

    friend bool operator==(const PlayerProfile&, const PlayerProfile&) = default;
};

/// Status of every level: unlocked iff all prerequisites are completed; the
/// first level of the first chapter is always unlocked.
std::map<std::string, LevelStatus> unlock_state(const Campaign& campaign, const PlayerProfile& profile);

PlayerProfile fresh_profile(const Campaign& campaign, std::string player_id);

/// Rejected completion of a level that is not unlocked.
class GatingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AttemptStats {
    std::int64_t attempts = 0;
    std::int64_t time_ms = 0;
};

struct CompletionResult {
    PlayerProfile profile;
    /// Codex ids unlocked by this completion, in the level's codex_refs order.
    std::vector<std::string> new_codex;
    std::vector<std::string> new_levels;
};

/// Marks the level completed, keeps the best score across replays and unlocks
/// its codex entries. Throws GatingError for a locked level.
CompletionResult record_completion(const Campaign& campaign, const PlayerProfile& profile, const std::string& level_id,
                                   int score, AttemptStats stats);

/// Profile document problem: unparsable, wrong shape, or a newer save version.
class ProfileError : public std::runtime_error {
public:
    enum class Kind { parse, migration };
    ProfileError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

std::string save_profile(const PlayerProfile& profile);
PlayerProfile load_profile(std::string_view document);

/// Write to a sibling temporary file, flush to disk, then rename over `path`.
void write_profile_file(const std::filesystem::path& path, const PlayerProfile& profile);
PlayerProfile read_profile_file(const std::filesystem::path& path);

}  // namespace cryptogame::campaign
