#include "cryptogame/service/service.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <regex>

#include "cryptogame/crypto/bytes.hpp"

namespace cryptogame::service {

namespace {

using campaign::LevelStatus;

struct ApiError {
    int status;
    std::string code;
    std::string message;
};

Response error(int status, std::string code, std::string message) {
    return {status, Json{{"code", std::move(code)}, {"message", std::move(message)}}};
}

Response error(const ApiError& e) {
    return error(e.status, e.code, e.message);
}

bool valid_player_id(const std::string& id) {
    return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '-' || c == '_' || c == '.';
    }) && id.front() != '.';
}

Json parse_body(const Request& request) {
    if (request.body.empty()) return Json::object();
    try {
        auto body = Json::parse(request.body);
        if (!body.is_object()) throw ApiError{400, "BAD_REQUEST", "request body must be a JSON object"};
        return body;
    } catch (const Json::parse_error&) {
        throw ApiError{400, "BAD_REQUEST", "request body is not valid JSON"};
    }
}

std::string chapter_of(const campaign::Campaign& c, const std::string& level_id) {
    for (const auto& ch : c.chapters) {
        if (std::find(ch.levels.begin(), ch.levels.end(), level_id) != ch.levels.end()) return ch.title;
    }
    return "";
}

/// Recomputes statuses against the campaign, e.g. after the campaign file changed.
campaign::PlayerProfile reconcile(const campaign::Campaign& c, campaign::PlayerProfile p) {
    const auto state = campaign::unlock_state(c, p);
    for (const auto& [id, status] : state) p.levels[id].status = status;
    if (!state.count(p.current) || state.at(p.current) == LevelStatus::locked) p.current = c.level_order().front();
    return p;
}

const std::regex level_start_route(R"(^/api/level/([^/]+)/start$)");

}  // namespace

std::optional<std::string> Request::header(std::string_view name) const {
    for (const auto& [k, v] : headers) {
        if (k.size() == name.size() &&
            std::equal(k.begin(), k.end(), name.begin(), [](char a, char b) { return std::tolower(a) == std::tolower(b); })) {
            return v;
        }
    }
    return std::nullopt;
}

Timestamp SystemClock::now() {
    return std::chrono::time_point_cast<std::chrono::milliseconds>(puzzle::Clock::now());
}

SteppingClock::SteppingClock(Timestamp start, std::chrono::milliseconds step)
    : next_ms_(start.time_since_epoch().count()), step_ms_(step.count()) {}

Timestamp SteppingClock::now() {
    return Timestamp(std::chrono::milliseconds(next_ms_.fetch_add(step_ms_)));
}

void SteppingClock::advance(std::chrono::milliseconds by) {
    next_ms_.fetch_add(by.count());
}

std::uint64_t instance_seed(std::string_view session_id, std::string_view level_id, std::uint64_t replay) {
    const auto key = std::string(session_id) + "|" + std::string(level_id) + "|" + std::to_string(replay);
    return crypto::fnv1a64(key);
}

const std::vector<std::string>& all_endpoints() {
    static const std::vector<std::string> endpoints{
        "POST /api/session", "POST /api/level/{id}/start", "POST /api/attempt",
        "POST /api/hint",    "GET /api/codex",             "GET /api/progress",
    };
    return endpoints;
}

struct GameService::Active {
    std::string level_id;
    puzzle::PuzzleInstance instance;
    puzzle::AttemptLog log;
};

struct GameService::Session {
    std::mutex mutex;
    std::string id;
    campaign::PlayerProfile profile;
    std::optional<Active> active;
    std::map<std::string, std::uint64_t> replays;
    Timestamp created_at;
    Timestamp last_seen;
    bool closed = false;
};

GameService::GameService(std::shared_ptr<const campaign::Campaign> campaign, ServiceOptions options)
    : campaign_(std::move(campaign)), options_(std::move(options)) {
    if (!options_.clock) {
        options_.clock = options_.deterministic ? std::shared_ptr<Clock>(std::make_shared<SteppingClock>())
                                                : std::shared_ptr<Clock>(std::make_shared<SystemClock>());
    }
    if (options_.deterministic) token_rng_ = std::make_unique<crypto::Rng>(options_.token_seed);
    if (!options_.profile_dir.empty()) std::filesystem::create_directories(options_.profile_dir);
}

GameService::~GameService() = default;

std::set<std::string> GameService::endpoints_hit() const {
    std::lock_guard lock(mutex_);
    return endpoints_hit_;
}

void GameService::note_endpoint(const std::string& key) {
    std::lock_guard lock(mutex_);
    endpoints_hit_.insert(key);
}

std::string GameService::new_token() {
    crypto::Bytes raw(16);
    if (token_rng_) {
        for (auto& b : raw) b = token_rng_->byte();
    } else {
        std::random_device rd;
        for (std::size_t i = 0; i < raw.size(); i += 4) {
            const auto word = rd();
            for (std::size_t j = 0; j < 4; ++j) raw[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
        }
    }
    std::string token = crypto::hex_encode(raw);
    std::transform(token.begin(), token.end(), token.begin(), [](unsigned char c) { return std::tolower(c); });
    return token;
}

campaign::PlayerProfile GameService::load_or_create_profile(const std::string& player_id) {
    if (options_.profile_dir.empty()) {
        const auto it = memory_profiles_.find(player_id);
        if (it != memory_profiles_.end()) return it->second;
    } else {
        const auto path = options_.profile_dir / (player_id + ".json");
        if (std::filesystem::exists(path)) return campaign::read_profile_file(path);
    }
    return campaign::fresh_profile(*campaign_, player_id);
}

void GameService::persist(const campaign::PlayerProfile& profile) {
    if (options_.profile_dir.empty()) {
        std::lock_guard lock(mutex_);
        memory_profiles_[profile.player_id] = profile;
    } else {
        campaign::write_profile_file(options_.profile_dir / (profile.player_id + ".json"), profile);
    }
}

void GameService::flush() {
    std::vector<std::shared_ptr<Session>> live;
    {
        std::lock_guard lock(mutex_);
        for (const auto& [_, s] : sessions_) live.push_back(s);
    }
    for (const auto& s : live) {
        std::lock_guard lock(s->mutex);
        persist(s->profile);
    }
}

Response GameService::handle(const Request& request) {
    try {
        const auto& path = request.path;
        const auto& method = request.method;
        std::smatch m;
        std::string route;
        std::string level_id;
        if (path == "/api/session") {
            route = "POST /api/session";
        } else if (std::regex_match(path, m, level_start_route)) {
            route = "POST /api/level/{id}/start";
            level_id = m[1].str();
        } else if (path == "/api/attempt") {
            route = "POST /api/attempt";
        } else if (path == "/api/hint") {
            route = "POST /api/hint";
        } else if (path == "/api/codex") {
            route = "GET /api/codex";
        } else if (path == "/api/progress") {
            route = "GET /api/progress";
        } else {
            return error(404, "NOT_FOUND", "no endpoint at " + path);
        }
        if (route.substr(0, route.find(' ')) != method) {
            return error(405, "METHOD_NOT_ALLOWED", method + " is not supported on " + path);
        }
        note_endpoint(route);

        const auto now = options_.clock->now();
        if (route == "POST /api/session") return create_session(request, now);

        const auto session = find_session(request, now);
        if (!session) return error(401, "UNKNOWN_SESSION", "missing, unknown or expired session token");
        std::lock_guard lock(session->mutex);
        if (session->closed) return error(401, "UNKNOWN_SESSION", "session has expired");

        if (route == "POST /api/level/{id}/start") return start_level(*session, level_id, now);
        if (route == "POST /api/attempt") return attempt(*session, request, now);
        if (route == "POST /api/hint") return hint(*session, now);
        if (route == "GET /api/codex") return codex(*session);
        return progress(*session);
    } catch (const ApiError& e) {
        return error(e);
    } catch (const campaign::ProfileError& e) {
        return error(500, "STORAGE_ERROR", e.what());
    } catch (const std::exception& e) {
        return error(500, "INTERNAL", e.what());
    }
}

std::shared_ptr<GameService::Session> GameService::find_session(const Request& request, Timestamp now) {
    const auto token = request.header(session_header);
    if (!token) return nullptr;
    std::shared_ptr<Session> session;
    {
        std::lock_guard lock(mutex_);
        const auto it = sessions_.find(*token);
        if (it == sessions_.end()) return nullptr;
        session = it->second;
    }
    std::lock_guard lock(session->mutex);
    if (session->closed) return nullptr;
    if (now - session->last_seen > options_.idle_timeout) {
        session->closed = true;
        persist(session->profile);
        std::lock_guard guard(mutex_);
        sessions_.erase(session->id);
        if (player_sessions_[session->profile.player_id] == session->id) player_sessions_.erase(session->profile.player_id);
        return nullptr;
    }
    session->last_seen = now;
    return session;
}

Response GameService::create_session(const Request& request, Timestamp now) {
    const auto body = parse_body(request);
    const auto it = body.find("player_id");
    if (it == body.end() || !it->is_string()) return error(400, "BAD_REQUEST", "player_id (string) is required");
    const auto player_id = it->get<std::string>();
    if (!valid_player_id(player_id)) {
        return error(400, "BAD_REQUEST", "player_id must be 1-64 characters of letters, digits, '-', '_' or '.'");
    }

    std::shared_ptr<Session> previous;
    {
        std::lock_guard lock(mutex_);
        if (const auto p = player_sessions_.find(player_id); p != player_sessions_.end()) previous = sessions_.at(p->second);
    }
    if (previous) {
        std::lock_guard lock(previous->mutex);
        if (!previous->closed && now - previous->last_seen <= options_.idle_timeout) {
            return error(409, "LOCKED_PROFILE", "player '" + player_id + "' already has an active session");
        }
        // Idle session: release the profile to the new session.
        if (!previous->closed) {
            previous->closed = true;
            persist(previous->profile);
        }
        std::lock_guard guard(mutex_);
        sessions_.erase(previous->id);
        player_sessions_.erase(player_id);
    }

    auto session = std::make_shared<Session>();
    {
        std::lock_guard lock(mutex_);
        session->id = new_token();
    }
    session->profile = reconcile(*campaign_, load_or_create_profile(player_id));
    session->created_at = now;
    session->last_seen = now;
    {
        std::lock_guard lock(mutex_);
        if (player_sessions_.count(player_id)) {
            return error(409, "LOCKED_PROFILE", "player '" + player_id + "' already has an active session");
        }
        sessions_[session->id] = session;
        player_sessions_[player_id] = session->id;
    }
    std::lock_guard lock(session->mutex);
    auto summary = progress(*session).body;
    return {200, Json{{"session_id", session->id}, {"player_id", player_id}, {"profile", std::move(summary)}}};
}

Response GameService::start_level(Session& session, const std::string& level_id, Timestamp now) {
    const auto* level = campaign_->find_level(level_id);
    if (!level) return error(404, "UNKNOWN_LEVEL", "no level '" + level_id + "'");
    const auto state = campaign::unlock_state(*campaign_, session.profile);
    if (state.at(level_id) == LevelStatus::locked) {
        return error(403, "LEVEL_LOCKED", "level '" + level_id + "' is locked; complete its prerequisites first");
    }
    const auto replay = session.replays[level_id]++;
    auto instance = puzzle::generate_instance(level->spec, instance_seed(session.id, level_id, replay));
    auto view = puzzle::instance_view_json(instance);
    session.active = Active{level_id, std::move(instance), puzzle::AttemptLog(now)};
    session.profile.current = level_id;

    Json body{{"level", level_id},
              {"chapter", chapter_of(*campaign_, level_id)},
              {"replay", replay},
              {"story_intro", level->story_intro},
              {"intro", level->spec.intro_text},
              {"kind", view["kind"]},
              {"answer_form", view["answer_form"]},
              {"challenge", view["challenge"]}};
    return {200, std::move(body)};
}

Response GameService::attempt(Session& session, const Request& request, Timestamp now) {
    const auto body = parse_body(request);
    if (!session.active) return error(409, "NO_ACTIVE_INSTANCE", "start a level before submitting answers");
    const auto it = body.find("answer");
    if (it == body.end() || !it->is_string()) return error(400, "BAD_REQUEST", "answer (string) is required");
    const auto answer = it->get<std::string>();
    auto& active = *session.active;

    puzzle::Feedback verdict;
    try {
        verdict = puzzle::check_answer(active.instance, answer);
    } catch (const puzzle::MalformedSubmission& e) {
        return error(422, "BAD_ANSWER_FORM", std::string("expected a ") + std::string(puzzle::to_string(active.instance.answer_form)) +
                                                  " answer: " + e.what());
    }

    if (verdict.verdict == puzzle::Verdict::incorrect) {
        const auto fb = puzzle::directional_feedback(active.instance, active.log, answer);
        active.log.record({answer, now, puzzle::attempt_fitness(active.instance, answer)});
        return {200, Json{{"verdict", puzzle::to_string(fb.verdict)},
                          {"direction", puzzle::to_string(fb.direction)},
                          {"message", fb.message},
                          {"attempts", active.log.attempts().size()}}};
    }

    active.log.record({answer, now, std::nullopt});
    const int score = puzzle::score_attempt(active.log, true);
    const auto* level = campaign_->find_level(active.level_id);
    const campaign::AttemptStats stats{static_cast<std::int64_t>(active.log.attempts().size()),
                                       (now - active.log.started_at()).count()};
    auto result = campaign::record_completion(*campaign_, session.profile, active.level_id, score, stats);
    session.profile = std::move(result.profile);
    const auto attempts = active.log.attempts().size();
    session.active.reset();
    persist(session.profile);

    return {200, Json{{"verdict", "correct"},
                      {"direction", "neutral"},
                      {"message", level->spec.success_text},
                      {"attempts", attempts},
                      {"score", score},
                      {"codex_updates", result.new_codex},
                      {"unlocked_levels", result.new_levels},
                      {"story_outro", level->story_outro}}};
}

Response GameService::hint(Session& session, Timestamp now) {
    if (!session.active) return error(409, "NO_ACTIVE_INSTANCE", "start a level before asking for hints");
    auto& active = *session.active;
    const auto* level = campaign_->find_level(active.level_id);
    const auto h = puzzle::hint_for(level->spec, active.log, now);
    if (!h) return {204, nullptr};
    active.log.take_hint(h->tier);
    return {200, Json{{"tier", h->tier}, {"text", h->text}}};
}

Response GameService::codex(Session& session) const {
    Json entries = Json::array();
    for (const auto& e : campaign_->codex) {
        if (!session.profile.codex.count(e.id)) continue;
        entries.push_back({{"id", e.id}, {"title", e.title}, {"body", e.body}, {"unlocked_by", e.unlocked_by}});
    }
    return {200, Json{{"entries", entries}}};
}

Response GameService::progress(Session& session) const {
    const auto& p = session.profile;
    const auto state = campaign::unlock_state(*campaign_, p);
    Json chapters = Json::array();
    int total = 0;
    for (const auto& ch : campaign_->chapters) {
        Json levels = Json::array();
        for (const auto& id : ch.levels) {
            Json l{{"id", id}, {"status", campaign::to_string(state.at(id))}};
            const auto rec = p.levels.find(id);
            if (rec != p.levels.end()) {
                if (rec->second.best_score) {
                    l["best_score"] = *rec->second.best_score;
                    total += *rec->second.best_score;
                }
                l["attempts"] = rec->second.attempts;
                l["total_time_ms"] = rec->second.total_time_ms;
            }
            levels.push_back(std::move(l));
        }
        chapters.push_back({{"title", ch.title}, {"levels", std::move(levels)}});
    }
    return {200, Json{{"player_id", p.player_id},
                      {"current", p.current},
                      {"total_score", total},
                      {"codex_unlocked", p.codex.size()},
                      {"codex_total", campaign_->codex.size()},
                      {"chapters", std::move(chapters)}}};
}

}  // namespace cryptogame::service
