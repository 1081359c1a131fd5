// Instructor and developer tool: validate, gen, solve, play, serve.

#include <CLI11.hpp>

#include <pthread.h>
#include <signal.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cryptogame/campaign/campaign.hpp"
#include "cryptogame/puzzle/serialize.hpp"
#include "cryptogame/service/http.hpp"
#include "cryptogame/service/service.hpp"

using namespace cryptogame;
using puzzle::Json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

campaign::CoverageManifest read_manifest(const std::string& path) {
    if (path.empty()) return campaign::default_manifest();
    std::ifstream in(path);
    if (!in) throw Failure("cannot read manifest " + path);
    try {
        return campaign::manifest_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw Failure("manifest " + path + ": " + e.what());
    }
}

std::shared_ptr<const campaign::Campaign> read_campaign(const std::string& path,
                                                        const campaign::CoverageManifest& manifest) {
    return std::make_shared<const campaign::Campaign>(campaign::load_campaign_file(path, manifest));
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& path, const std::string& manifest_path, std::uint64_t seeds, bool json) {
    const auto manifest = read_manifest(manifest_path);
    Json report{{"campaign", path}};
    try {
        const auto c = read_campaign(path, manifest);
        std::vector<std::uint64_t> seed_list(seeds);
        for (std::uint64_t i = 0; i < seeds; ++i) seed_list[i] = i;
        Json levels = Json::array();
        bool all_ok = true;
        for (const auto& id : c->level_order()) {
            const auto v = campaign::verify_level(*c->find_level(id), seed_list);
            all_ok = all_ok && v.ok;
            levels.push_back({{"id", id}, {"seeds", v.seeds_checked}, {"ok", v.ok}, {"detail", v.detail}});
            if (!json) {
                std::cout << (v.ok ? "ok    " : "FAIL  ") << id << " (" << v.seeds_checked << " seeds)"
                          << (v.ok ? "" : ": " + v.detail) << '\n';
            }
        }
        const auto missing = campaign::uncovered_topics(*c, manifest);
        report["levels"] = levels;
        report["chapters"] = c->chapters.size();
        report["uncovered_topics"] = missing;
        report["ok"] = all_ok && missing.empty();
        if (json) {
            std::cout << report.dump(2) << '\n';
        } else {
            for (const auto& topic : missing) std::cout << "error: topic not covered: " << topic << '\n';
            if (all_ok && missing.empty()) {
                std::cout << c->chapters.size() << " chapters, all levels solvable\n";
            }
        }
        return report["ok"].get<bool>() ? exit_ok : exit_failure;
    } catch (const campaign::CampaignError& e) {
        report["ok"] = false;
        report["error"] = {{"kind", campaign::to_string(e.kind())}, {"path", e.path()}, {"message", e.what()}};
        if (json) {
            std::cout << report.dump(2) << '\n';
        } else {
            std::cout << "error: " << campaign::to_string(e.kind()) << " at " << e.what() << '\n';
        }
        return exit_failure;
    } catch (const puzzle::SchemaError& e) {
        report["ok"] = false;
        report["error"] = {{"kind", "schema"}, {"path", e.path()}, {"message", e.what()}};
        if (json) {
            std::cout << report.dump(2) << '\n';
        } else {
            std::cout << "error: schema at " << e.what() << '\n';
        }
        return exit_failure;
    }
}

// ---------------------------------------------------------------- gen / solve

int run_gen(const std::string& campaign_path, const std::string& level_id, std::uint64_t seed) {
    const auto c = read_campaign(campaign_path, campaign::default_manifest());
    const auto* level = c->find_level(level_id);
    if (!level) throw Failure("unknown level '" + level_id + "'");
    std::cout << puzzle::instance_authoring_json(puzzle::generate_instance(level->spec, seed)).dump(2) << '\n';
    return exit_ok;
}

int run_solve(const std::string& instance_path, bool json) {
    Json doc;
    if (instance_path == "-") {
        doc = Json::parse(std::cin);
    } else {
        std::ifstream in(instance_path);
        if (!in) throw Failure("cannot read " + instance_path);
        doc = Json::parse(in);
    }
    const auto instance = puzzle::instance_from_authoring_json(doc);
    const auto result = puzzle::reference_solve(instance, true);
    if (json) {
        std::cout << Json{{"level", instance.spec_id},
                          {"kind", puzzle::to_string(instance.kind)},
                          {"answer", result.answer},
                          {"verified", result.verified},
                          {"detail", result.detail}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "answer: " << result.answer << '\n';
        std::cout << (result.verified ? "verified" : "MISMATCH: " + result.detail) << '\n';
    }
    return result.verified ? exit_ok : exit_failure;
}

// ---------------------------------------------------------------- play

const std::set<std::string> secret_keys{"solution", "plaintext", "seed",  "shift", "column_order",
                                        "secret_a", "watermark", "p_factor", "q_factor", "d"};

void find_secret_keys(const Json& j, std::vector<std::string>& found) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (secret_keys.count(k)) found.push_back(k);
            find_secret_keys(v, found);
        }
    } else if (j.is_array()) {
        for (const auto& v : j) find_secret_keys(v, found);
    }
}

/// A well-formed answer that check_answer rejects, for --wrong-first.
std::string wrong_answer(const puzzle::PuzzleInstance& inst) {
    std::vector<std::string> candidates;
    switch (inst.answer_form) {
        case puzzle::AnswerForm::text: candidates = {"QQQ WRONG GUESS", "ZZZ"}; break;
        case puzzle::AnswerForm::integer: candidates = {std::to_string(std::stoull(inst.solution) + 1), "0"}; break;
        case puzzle::AnswerForm::hex: candidates = {"00", "ff", "0000", "ffff"}; break;
        case puzzle::AnswerForm::point: candidates = {"INF", "(0,0)", "(1,1)"}; break;
        case puzzle::AnswerForm::script: candidates = {"rev", "shift(1)", "rev | rev"}; break;
    }
    for (const auto& a : candidates) {
        try {
            if (puzzle::check_answer(inst, a).verdict == puzzle::Verdict::incorrect) return a;
        } catch (const puzzle::MalformedSubmission&) {
        }
    }
    throw Failure("no wrong answer candidate for level " + inst.spec_id);
}

class Bot {
public:
    Bot(service::GameService& svc, std::ostream& out) : svc_(svc), out_(out) {}

    service::Response call(const std::string& method, const std::string& path, const Json& body = nullptr) {
        service::Request r{method, path, {}, body.is_null() ? "" : body.dump()};
        if (!session_.empty()) r.headers[service::session_header] = session_;
        auto resp = svc_.handle(r);
        scan(resp);
        return resp;
    }

    void expect(bool ok, const std::string& what) {
        if (!ok) throw Failure(what);
    }

    void run(const std::string& player, bool wrong_first) {
        auto r = call("POST", "/api/session", Json{{"player_id", player}});
        expect(r.status == 200, "session: " + r.body.dump());
        session_ = r.body["session_id"].get<std::string>();
        out_ << "session player=" << player << " levels=" << svc_.campaign().levels.size() << '\n';

        const auto& c = svc_.campaign();
        std::set<std::string> unlocked;
        bool hinted = false;
        for (const auto& id : c.level_order()) {
            r = call("POST", "/api/level/" + id + "/start");
            expect(r.status == 200, "start " + id + ": " + r.body.dump());
            const auto replay = r.body["replay"].get<std::uint64_t>();
            out_ << "[" << id << "] start kind=" << r.body["kind"].get<std::string>()
                 << " form=" << r.body["answer_form"].get<std::string>() << '\n';
            const auto* level = c.find_level(id);
            const auto inst = puzzle::generate_instance(level->spec, service::instance_seed(session_, id, replay));
            watch(inst);

            if (!hinted) {
                r = call("POST", "/api/hint");
                expect(r.status == 204 || r.status == 200, "hint " + id + ": " + r.body.dump());
                out_ << "[" << id << "] hint " << r.status << '\n';
                hinted = true;
            }

            const auto solved = puzzle::reference_solve(inst, true);
            expect(solved.verified, "reference solve of " + id + " failed: " + solved.detail);

            if (wrong_first) {
                r = call("POST", "/api/attempt", Json{{"answer", wrong_answer(inst)}});
                expect(r.status == 200 && r.body["verdict"] == "incorrect" && r.body.contains("direction"),
                       "wrong-first attempt on " + id + ": " + r.body.dump());
                out_ << "[" << id << "] attempt verdict=incorrect direction=" << r.body["direction"].get<std::string>()
                     << '\n';
            }

            r = call("POST", "/api/attempt", Json{{"answer", solved.answer}});
            expect(r.status == 200 && r.body["verdict"] == "correct", "attempt on " + id + ": " + r.body.dump());
            std::vector<std::string> expected;
            for (const auto& ref : level->spec.codex_refs) {
                if (unlocked.insert(ref).second) expected.push_back(ref);
            }
            const auto got = r.body["codex_updates"].get<std::vector<std::string>>();
            expect(got == expected, "codex updates for " + id + " were " + r.body["codex_updates"].dump());
            ++levels_completed_;
            attempts_ += r.body["attempts"].get<int>();
            score_ += r.body["score"].get<int>();
            out_ << "[" << id << "] attempt verdict=correct score=" << r.body["score"].get<int>()
                 << " attempts=" << r.body["attempts"].get<int>() << " codex=";
            for (std::size_t i = 0; i < got.size(); ++i) out_ << (i ? "," : "") << got[i];
            out_ << '\n';
        }

        r = call("GET", "/api/codex");
        expect(r.status == 200 && r.body["entries"].size() == c.codex.size(),
               "codex lists " + std::to_string(r.body["entries"].size()) + " of " + std::to_string(c.codex.size()));
        r = call("GET", "/api/progress");
        expect(r.status == 200, "progress: " + r.body.dump());
        for (const auto& ch : r.body["chapters"]) {
            for (const auto& l : ch["levels"]) {
                expect(l["status"] == "completed", "level " + l["id"].get<std::string>() + " not completed");
                game_time_ms_ += l["total_time_ms"].get<std::int64_t>();
            }
        }
        codex_ = r.body["codex_unlocked"].get<std::size_t>();
        expect(codex_ == c.codex.size(), "codex entries unlocked: " + std::to_string(codex_));

        const auto hit = svc_.endpoints_hit();
        for (const auto& e : service::all_endpoints()) expect(hit.count(e) == 1, "endpoint never exercised: " + e);
        expect(leaks_.empty(), leaks_.empty() ? "" : "solution leaked: " + leaks_.front());

        out_ << "summary levels=" << levels_completed_ << "/" << c.levels.size() << " attempts=" << attempts_
             << " score=" << score_ << " codex=" << codex_ << "/" << c.codex.size() << " endpoints=" << hit.size()
             << "/" << service::all_endpoints().size() << " game_time_s=" << game_time_ms_ / 1000 << " leaks=0\n";
    }

private:
    void watch(const puzzle::PuzzleInstance& inst) {
        if (!inst.plaintext.empty()) secrets_.push_back(puzzle::normalize_text(inst.plaintext));
        if (inst.solution.size() >= 8) secrets_.push_back(inst.solution);
    }

    void scan(const service::Response& resp) {
        std::vector<std::string> keys;
        find_secret_keys(resp.body, keys);
        for (const auto& k : keys) leaks_.push_back("field '" + k + "'");
        const auto text = resp.body.dump();
        for (const auto& s : secrets_) {
            if (text.find(s) != std::string::npos) leaks_.push_back("value '" + s + "'");
        }
    }

    service::GameService& svc_;
    std::ostream& out_;
    std::string session_;
    std::vector<std::string> secrets_;
    std::vector<std::string> leaks_;
    int levels_completed_ = 0;
    int attempts_ = 0;
    int score_ = 0;
    std::size_t codex_ = 0;
    std::int64_t game_time_ms_ = 0;
};

int run_play(const std::string& campaign_path, std::uint64_t seed, bool wrong_first, bool deterministic) {
    const auto started = std::chrono::steady_clock::now();
    service::ServiceOptions options;
    options.deterministic = deterministic;
    options.token_seed = seed;
    service::GameService svc(read_campaign(campaign_path, campaign::default_manifest()), options);
    Bot bot(svc, std::cout);
    try {
        bot.run("reference-bot", wrong_first);
    } catch (const Failure& e) {
        std::cout << "FAILED " << e.what() << '\n';
        return exit_failure;
    }
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - started;
    std::cerr << "wall time " << wall.count() << " s\n";
    return exit_ok;
}

// ---------------------------------------------------------------- serve

int run_serve(const std::string& campaign_path, const std::string& host, int port, const std::string& profile_dir,
              bool deterministic) {
    // Fail before opening any socket.
    const auto c = read_campaign(campaign_path, campaign::default_manifest());

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGTERM);
    sigaddset(&signals, SIGINT);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    service::ServiceOptions options;
    options.profile_dir = profile_dir;
    options.deterministic = deterministic;
    service::GameService svc(c, options);
    service::HttpServer server(svc, &std::cerr);
    const int bound = server.bind(host, port);
    std::cout << bound << std::endl;

    std::thread serving([&] { server.serve(); });
    int received = 0;
    sigwait(&signals, &received);
    std::cerr << "received signal " << received << ", shutting down\n";
    server.stop();
    serving.join();
    svc.flush();
    std::cerr << "profiles flushed\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cryptography puzzle campaign tool"};
    app.require_subcommand(1);
    std::string campaign_path = CRYPTOGAME_DEFAULT_CAMPAIGN;

    auto* validate = app.add_subcommand("validate", "Check a campaign file: schema, references, coverage, solvability");
    std::string manifest_path;
    std::uint64_t validate_seeds = 20;
    std::string format = "text";
    validate->add_option("campaign", campaign_path, "Campaign JSON file")->required();
    validate->add_option("--manifest", manifest_path, "Topic coverage manifest JSON (default: built in)");
    validate->add_option("--seeds", validate_seeds, "Seeds checked per level")->check(CLI::Range(1, 100000));
    validate->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* gen = app.add_subcommand("gen", "Print an authoring instance document, solution included");
    std::string level_id;
    std::uint64_t seed = 0;
    gen->add_option("level", level_id, "Level id")->required();
    gen->add_option("--seed", seed, "Instance seed");
    gen->add_option("--campaign", campaign_path, "Campaign JSON file");

    auto* solve = app.add_subcommand("solve", "Re-derive and verify the answer of an instance document");
    std::string instance_path;
    solve->add_option("instance", instance_path, "Instance document, or - for standard input")->required();
    solve->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* play = app.add_subcommand("play", "Play the whole campaign with the reference bot");
    bool headless = false;
    std::string bot = "reference";
    bool wrong_first = false;
    bool deterministic = false;
    std::uint64_t play_seed = 0x5EED;
    play->add_flag("--headless", headless, "Run without a client (required)")->required();
    play->add_option("--bot", bot, "Bot strategy")->check(CLI::IsMember({"reference"}));
    play->add_option("--seed", play_seed, "Session token seed used with --deterministic");
    play->add_flag("--wrong-first", wrong_first, "Submit one wrong answer before each correct one");
    play->add_flag("--deterministic", deterministic, "Fixed clock and seeded session tokens");
    play->add_option("--campaign", campaign_path, "Campaign JSON file");

    auto* serve = app.add_subcommand("serve", "Run the HTTP game service");
    int port = 8080;
    std::string host = "127.0.0.1";
    std::string profile_dir = "profiles";
    bool serve_deterministic = false;
    serve->add_option("--port", port, "Port, 0 for any free port")->envname("CRYPTOGAME_PORT")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Listen address")->envname("CRYPTOGAME_HOST");
    serve->add_option("--campaign", campaign_path, "Campaign JSON file")->envname("CRYPTOGAME_CAMPAIGN");
    serve->add_option("--profile-dir", profile_dir, "Directory for player profiles")->envname("CRYPTOGAME_PROFILE_DIR");
    serve->add_flag("--deterministic", serve_deterministic, "Fixed clock and seeded session tokens")
        ->envname("CRYPTOGAME_DETERMINISTIC");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*validate) return run_validate(campaign_path, manifest_path, validate_seeds, format == "json");
        if (*gen) return run_gen(campaign_path, level_id, seed);
        if (*solve) return run_solve(instance_path, format == "json");
        if (*play) return run_play(campaign_path, play_seed, wrong_first, deterministic);
        if (*serve) return run_serve(campaign_path, host, port, profile_dir, serve_deterministic);
    } catch (const campaign::CampaignError& e) {
        std::cerr << "error: " << campaign::to_string(e.kind()) << " at " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return exit_failure;
}
