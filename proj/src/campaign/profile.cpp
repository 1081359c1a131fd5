#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cryptogame/campaign/campaign.hpp"

namespace cryptogame::campaign {

namespace {

constexpr std::array<std::string_view, 3> status_names{"locked", "unlocked", "completed"};

[[noreturn]] void bad_profile(const std::string& what) {
    throw ProfileError(ProfileError::Kind::parse, "profile: " + what);
}

std::int64_t read_int(const Json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer()) bad_profile(where + "." + key + " must be an integer");
    return it->get<std::int64_t>();
}

std::string read_string(const Json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) bad_profile(where + "." + key + " must be a string");
    return it->get<std::string>();
}

[[noreturn]] void io_failure(const std::string& what, const std::filesystem::path& path) {
    throw std::runtime_error(what + " " + path.string() + ": " + std::strerror(errno));
}

}  // namespace

std::string_view to_string(LevelStatus status) {
    return status_names[static_cast<std::size_t>(status)];
}

std::optional<LevelStatus> parse_level_status(std::string_view name) {
    for (std::size_t i = 0; i < status_names.size(); ++i) {
        if (status_names[i] == name) return static_cast<LevelStatus>(i);
    }
    return std::nullopt;
}

std::map<std::string, LevelStatus> unlock_state(const Campaign& campaign, const PlayerProfile& profile) {
    auto completed = [&](const std::string& id) {
        const auto it = profile.levels.find(id);
        return it != profile.levels.end() && it->second.status == LevelStatus::completed;
    };
    const auto order = campaign.level_order();
    std::map<std::string, LevelStatus> state;
    for (const auto& id : order) {
        const auto* level = campaign.find_level(id);
        if (completed(id)) {
            state[id] = LevelStatus::completed;
        } else if (id == order.front() ||
                   std::all_of(level->prerequisites.begin(), level->prerequisites.end(), completed)) {
            state[id] = LevelStatus::unlocked;
        } else {
            state[id] = LevelStatus::locked;
        }
    }
    return state;
}

PlayerProfile fresh_profile(const Campaign& campaign, std::string player_id) {
    PlayerProfile p;
    p.player_id = std::move(player_id);
    for (const auto& [id, status] : unlock_state(campaign, p)) p.levels[id].status = status;
    p.current = campaign.level_order().front();
    return p;
}

CompletionResult record_completion(const Campaign& campaign, const PlayerProfile& profile, const std::string& level_id,
                                   int score, AttemptStats stats) {
    const auto* level = campaign.find_level(level_id);
    if (!level) throw GatingError("unknown level '" + level_id + "'");
    const auto before = unlock_state(campaign, profile);
    if (before.at(level_id) == LevelStatus::locked) throw GatingError("level '" + level_id + "' is locked");

    CompletionResult result{profile, {}, {}};
    auto& rec = result.profile.levels[level_id];
    rec.status = LevelStatus::completed;
    rec.best_score = std::max(rec.best_score.value_or(score), score);
    rec.attempts += stats.attempts;
    rec.total_time_ms += stats.time_ms;
    for (const auto& ref : level->spec.codex_refs) {
        if (result.profile.codex.insert(ref).second) result.new_codex.push_back(ref);
    }

    const auto after = unlock_state(campaign, result.profile);
    const auto order = campaign.level_order();
    for (const auto& id : order) {
        if (before.at(id) == LevelStatus::locked && after.at(id) != LevelStatus::locked) result.new_levels.push_back(id);
        result.profile.levels[id].status = after.at(id);
    }
    const auto next = std::find_if(order.begin(), order.end(), [&](const auto& id) { return after.at(id) == LevelStatus::unlocked; });
    result.profile.current = next != order.end() ? *next : level_id;
    return result;
}

std::string save_profile(const PlayerProfile& profile) {
    Json levels = Json::object();
    for (const auto& [id, rec] : profile.levels) {
        Json r{{"status", to_string(rec.status)}};
        if (rec.best_score) r["best_score"] = *rec.best_score;
        r["attempts"] = rec.attempts;
        r["total_time_ms"] = rec.total_time_ms;
        levels[id] = std::move(r);
    }
    const Json doc{{"version", profile.version},
                   {"player_id", profile.player_id},
                   {"levels", levels},
                   {"codex", profile.codex},
                   {"current", profile.current}};
    return doc.dump(2) + "\n";
}

PlayerProfile load_profile(std::string_view document) {
    Json doc;
    try {
        doc = Json::parse(document);
    } catch (const Json::parse_error& e) {
        bad_profile(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_profile("document is not an object");
    PlayerProfile p;
    const auto version = read_int(doc, "version", "profile");
    if (version > PlayerProfile::save_version) {
        throw ProfileError(ProfileError::Kind::migration,
                           "profile save version " + std::to_string(version) + " is newer than supported version " +
                               std::to_string(PlayerProfile::save_version) + "; upgrade the game to read it");
    }
    if (version < 1) bad_profile("version must be at least 1");
    p.version = static_cast<int>(version);
    p.player_id = read_string(doc, "player_id", "profile");
    p.current = read_string(doc, "current", "profile");

    const auto levels = doc.find("levels");
    if (levels == doc.end() || !levels->is_object()) bad_profile("levels must be an object");
    for (const auto& [id, r] : levels->items()) {
        const auto where = "levels." + id;
        if (!r.is_object()) bad_profile(where + " must be an object");
        LevelRecord rec;
        const auto status = parse_level_status(read_string(r, "status", where));
        if (!status) bad_profile(where + ".status is not a known status");
        rec.status = *status;
        if (r.contains("best_score")) rec.best_score = static_cast<int>(read_int(r, "best_score", where));
        if (rec.status == LevelStatus::completed && !rec.best_score) bad_profile(where + " is completed without a score");
        rec.attempts = read_int(r, "attempts", where);
        rec.total_time_ms = read_int(r, "total_time_ms", where);
        p.levels.emplace(id, rec);
    }
    const auto codex = doc.find("codex");
    if (codex == doc.end() || !codex->is_array()) bad_profile("codex must be an array");
    for (const auto& c : *codex) {
        if (!c.is_string()) bad_profile("codex ids must be strings");
        p.codex.insert(c.get<std::string>());
    }
    return p;
}

void write_profile_file(const std::filesystem::path& path, const PlayerProfile& profile) {
    const auto text = save_profile(profile);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) io_failure("cannot create", tmp);
    std::size_t written = 0;
    while (written < text.size()) {
        const auto n = ::write(fd, text.data() + written, text.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            ::close(fd);
            ::unlink(tmp.c_str());
            io_failure("cannot write", tmp);
        }
        written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0 || ::close(fd) != 0) {
        ::unlink(tmp.c_str());
        io_failure("cannot flush", tmp);
    }
    if (::rename(tmp.c_str(), path.c_str()) != 0) {
        ::unlink(tmp.c_str());
        io_failure("cannot replace", path);
    }
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    if (const int dfd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC); dfd >= 0) {
        ::fsync(dfd);
        ::close(dfd);
    }
}

PlayerProfile read_profile_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad_profile("cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return load_profile(text.str());
}

}  // namespace cryptogame::campaign
