#pragma once
// Game session service. `GameService::handle` is transport-agnostic; the HTTP
// binding in http.hpp only translates requests and responses.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cryptogame/campaign/campaign.hpp"
#include "cryptogame/crypto/rng.hpp"

namespace cryptogame::service {

using puzzle::Json;
using puzzle::Timestamp;

/// Header carrying the session token on every call after POST /api/session.
inline constexpr const char* session_header = "X-Session-Id";

struct Request {
    std::string method;
    std::string path;
    /// Header names are matched case-insensitively.
    std::map<std::string, std::string> headers;
    std::string body;

    std::optional<std::string> header(std::string_view name) const;
};

struct Response {
    int status = 200;
    /// Null for 204.
    Json body;
};

class Clock {
public:
    virtual ~Clock() = default;
    virtual Timestamp now() = 0;
};

class SystemClock final : public Clock {
public:
    Timestamp now() override;
};

/// Deterministic clock: every call returns the previous reading plus `step`.
class SteppingClock final : public Clock {
public:
    explicit SteppingClock(Timestamp start = Timestamp(std::chrono::milliseconds(1'700'000'000'000)),
                           std::chrono::milliseconds step = std::chrono::seconds(1));
    Timestamp now() override;
    /// Moves the clock forward without a reading, e.g. to simulate thinking time.
    void advance(std::chrono::milliseconds by);

private:
    std::atomic<std::int64_t> next_ms_;
    std::int64_t step_ms_;
};

struct ServiceOptions {
    /// Where profiles are saved, one JSON file per player. Empty keeps them in memory.
    std::filesystem::path profile_dir;
    /// Fixed clock and seeded session tokens.
    bool deterministic = false;
    std::uint64_t token_seed = 0x5EED;
    /// A session idle this long no longer holds its player's profile.
    std::chrono::milliseconds idle_timeout = std::chrono::minutes(30);
    /// Defaults to SystemClock, or SteppingClock when deterministic.
    std::shared_ptr<Clock> clock;
};

/// Seed of the `replay`-th start of a level within a session.
std::uint64_t instance_seed(std::string_view session_id, std::string_view level_id, std::uint64_t replay);

/// Route keys, e.g. "POST /api/level/{id}/start".
const std::vector<std::string>& all_endpoints();

class GameService {
public:
    GameService(std::shared_ptr<const campaign::Campaign> campaign, ServiceOptions options);
    ~GameService();

    GameService(const GameService&) = delete;
    GameService& operator=(const GameService&) = delete;

    Response handle(const Request& request);

    /// Saves every live profile. Called on shutdown.
    void flush();

    /// Route keys that have served at least one request.
    std::set<std::string> endpoints_hit() const;

    const campaign::Campaign& campaign() const { return *campaign_; }

private:
    struct Session;
    struct Active;

    Response create_session(const Request& request, Timestamp now);
    Response start_level(Session& session, const std::string& level_id, Timestamp now);
    Response attempt(Session& session, const Request& request, Timestamp now);
    Response hint(Session& session, Timestamp now);
    Response codex(Session& session) const;
    Response progress(Session& session) const;

    std::shared_ptr<Session> find_session(const Request& request, Timestamp now);
    campaign::PlayerProfile load_or_create_profile(const std::string& player_id);
    void persist(const campaign::PlayerProfile& profile);
    std::string new_token();
    void note_endpoint(const std::string& key);

    std::shared_ptr<const campaign::Campaign> campaign_;
    ServiceOptions options_;

    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::map<std::string, std::string> player_sessions_;
    std::map<std::string, campaign::PlayerProfile> memory_profiles_;
    std::set<std::string> endpoints_hit_;
    std::unique_ptr<crypto::Rng> token_rng_;
};

}  // namespace cryptogame::service
