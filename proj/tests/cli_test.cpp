#include <gtest/gtest.h>

#include <httplib.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <fstream>
#include <thread>

#include "cryptogame/crypto/number_theory.hpp"
#include "cryptogame/puzzle/serialize.hpp"

using cryptogame::puzzle::Json;

namespace {

const std::string cli = CRYPTOGAME_CLI;
const std::filesystem::path shipped_path = std::filesystem::path(CRYPTOGAME_DATA_DIR) / "campaign.json";

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const auto cmd = cli + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("cryptogame_cli_" + std::to_string(::getpid()) + "_" + name);
    std::filesystem::remove_all(p);
    return p;
}

void write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

Json shipped_doc() {
    std::ifstream in(shipped_path);
    return Json::parse(in);
}

std::vector<std::string> level_ids() {
    std::vector<std::string> ids;
    const auto doc = shipped_doc();
    for (const auto& l : doc["levels"]) ids.push_back(l["id"].get<std::string>());
    return ids;
}

}  // namespace

TEST(Validate, ShippedCampaignPasses) {
    const auto r = run("validate " + shipped_path.string());
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("5 chapters, all levels solvable"), std::string::npos) << r.out;
}

TEST(Validate, JsonFormat) {
    const auto r = run("validate --format json " + shipped_path.string());
    ASSERT_EQ(r.code, 0);
    const auto doc = Json::parse(r.out);
    EXPECT_TRUE(doc["ok"].get<bool>());
    EXPECT_EQ(doc["chapters"], 5);
    EXPECT_EQ(doc["levels"].size(), level_ids().size());
}

TEST(Validate, MissingCoverageNamesTopic) {
    auto doc = shipped_doc();
    for (auto& l : doc["levels"]) {
        if (l["id"] == "escrow") l["topics"] = Json::array();
    }
    for (auto& e : doc["codex"]) {
        if (e["id"] == "key-escrow") e["topics"] = Json::array();
    }
    const auto path = scratch("no_escrow.json");
    write(path, doc.dump());
    const auto r = run("validate " + path.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("Key Management and Key Distribution / Key Escrow"), std::string::npos) << r.out;
    std::filesystem::remove(path);
}

TEST(Validate, MalformedFilePrintsPath) {
    const auto path = scratch("bad.json");
    write(path, "{\"version\": 1, \"chapters\": [");
    auto r = run("validate " + path.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("byte"), std::string::npos) << r.out;

    auto doc = shipped_doc();
    doc["levels"][1]["puzzle"]["kind"] = "ENIGMA";
    write(path, doc.dump());
    r = run("validate " + path.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("levels[1].puzzle.kind"), std::string::npos) << r.out;
    std::filesystem::remove(path);
}

TEST(Usage, ErrorsExitTwo) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("play --bot reference").code, 2);
    EXPECT_EQ(run("validate").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Gen, DeterministicAndSeedSensitive) {
    const auto a = run("gen caesar --seed 42");
    const auto b = run("gen caesar --seed 42");
    const auto c = run("gen caesar --seed 43");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto da = Json::parse(a.out);
    const auto dc = Json::parse(c.out);
    EXPECT_NE(da["data"]["ciphertext"], dc["data"]["ciphertext"]);
    EXPECT_EQ(da["watermark"], cryptogame::puzzle::authoring_watermark);
    const int shift = da["data"]["shift"].get<int>();
    EXPECT_GE(shift, 1);
    EXPECT_LE(shift, 25);
    EXPECT_EQ(run("gen no-such-level").code, 1);
}

TEST(Solve, RoundTripsEveryLevelTwentySeeds) {
    const auto path = scratch("instance.json");
    for (const auto& id : level_ids()) {
        for (int seed = 0; seed < 20; ++seed) {
            const auto g = run("gen " + id + " --seed " + std::to_string(seed));
            ASSERT_EQ(g.code, 0) << id;
            write(path, g.out);
            const auto s = run("solve --format json " + path.string());
            ASSERT_EQ(s.code, 0) << id << " seed " << seed << ": " << s.out;
            const auto doc = Json::parse(s.out);
            EXPECT_TRUE(doc["verified"].get<bool>());
            EXPECT_EQ(doc["answer"], Json::parse(g.out)["solution"]);
        }
    }
    std::filesystem::remove(path);
}

TEST(Solve, CaesarPrintsPlaintextVerified) {
    const auto path = scratch("caesar.json");
    const auto g = run("gen caesar --seed 42");
    write(path, g.out);
    const auto s = run("solve " + path.string());
    EXPECT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("answer: " + Json::parse(g.out)["plaintext"].get<std::string>()), std::string::npos);
    EXPECT_NE(s.out.find("verified"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Solve, TamperedSolutionExitsOne) {
    const auto path = scratch("tampered.json");
    auto doc = Json::parse(run("gen caesar --seed 5").out);
    doc["solution"] = "THIS IS NOT THE MESSAGE";
    write(path, doc.dump());
    const auto s = run("solve " + path.string());
    EXPECT_EQ(s.code, 1);
    EXPECT_NE(s.out.find("MISMATCH"), std::string::npos) << s.out;
    std::filesystem::remove(path);
}

TEST(Solve, DiffieHellmanMatchesModpow) {
    const auto path = scratch("dh.json");
    for (int seed = 0; seed < 10; ++seed) {
        const auto g = Json::parse(run("gen diffie-hellman --seed " + std::to_string(seed)).out);
        write(path, g.dump());
        const auto s = Json::parse(run("solve --format json " + path.string()).out);
        const auto& d = g["data"];
        const auto p = d["p"].get<std::uint64_t>();
        const auto shared = cryptogame::crypto::modpow(d["public_b"].get<std::uint64_t>(), d["secret_a"].get<std::uint64_t>(), p);
        EXPECT_EQ(s["answer"], std::to_string(shared));
    }
    std::filesystem::remove(path);
}

TEST(Play, HeadlessBotCompletesCampaign) {
    const auto r = run("play --headless --bot reference --deterministic");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("summary levels=12/12"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("codex=19/19 endpoints=6/6"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("leaks=0"), std::string::npos);
}

TEST(Play, WrongFirstShowsIncorrectThenCorrect) {
    const auto r = run("play --headless --bot reference --deterministic --wrong-first");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto wrong = r.out.find("[caesar] attempt verdict=incorrect direction=");
    const auto right = r.out.find("[caesar] attempt verdict=correct");
    ASSERT_NE(wrong, std::string::npos) << r.out;
    EXPECT_LT(wrong, right);
}

TEST(Play, FixedSeedGivesIdenticalTranscript) {
    const auto a = run("play --headless --bot reference --deterministic --seed 11 --wrong-first");
    const auto b = run("play --headless --bot reference --deterministic --seed 11 --wrong-first");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Serve, BadCampaignExitsBeforeListening) {
    EXPECT_EQ(run("serve --port 0 --campaign /nonexistent/campaign.json").code, 1);
}

namespace {

struct Served {
    pid_t pid = -1;
    int port = -1;
};

/// Starts `serve` with extra environment and waits for the port line.
Served spawn_serve(const std::vector<std::string>& args, const std::vector<std::string>& env = {}) {
    int out[2];
    if (::pipe(out) != 0) return {};
    const pid_t pid = ::fork();
    if (pid == 0) {
        ::dup2(out[1], STDOUT_FILENO);
        ::close(out[0]);
        ::close(out[1]);
        for (const auto& e : env) ::putenv(const_cast<char*>(e.c_str()));
        std::vector<char*> argv{const_cast<char*>(cli.c_str()), const_cast<char*>("serve")};
        for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        ::execv(cli.c_str(), argv.data());
        ::_exit(127);
    }
    ::close(out[1]);
    std::string line;
    char ch;
    while (::read(out[0], &ch, 1) == 1 && ch != '\n') line += ch;
    ::close(out[0]);
    Served s{pid, -1};
    try {
        s.port = std::stoi(line);
    } catch (const std::exception&) {
    }
    return s;
}

int terminate(const Served& s) {
    ::kill(s.pid, SIGTERM);
    int status = 0;
    ::waitpid(s.pid, &status, 0);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Serve, EphemeralPortAndFlushOnTerminate) {
    const auto dir = scratch("profiles");
    const auto served = spawn_serve({"--port", "0", "--profile-dir", dir.string(), "--deterministic"});
    ASSERT_GT(served.port, 0);

    httplib::Client client("127.0.0.1", served.port);
    auto res = client.Post("/api/session", R"({"player_id":"wendy"})", "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200);
    const auto session = Json::parse(res->body)["session_id"].get<std::string>();
    res = client.Post("/api/level/caesar/start", httplib::Headers{{"X-Session-Id", session}}, "", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);

    EXPECT_EQ(terminate(served), 0);
    const auto saved = dir / "wendy.json";
    ASSERT_TRUE(std::filesystem::exists(saved));
    std::ifstream in(saved);
    EXPECT_EQ(Json::parse(in)["player_id"], "wendy");
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        EXPECT_EQ(e.path().extension(), ".json") << e.path();
    }
    std::filesystem::remove_all(dir);
}

TEST(Serve, EnvironmentFallbackAndFlagPrecedence) {
    const auto dir = scratch("env_profiles");
    // Environment alone: a missing campaign stops startup.
    const auto refused = spawn_serve({"--port", "0"}, {"CRYPTOGAME_CAMPAIGN=/nonexistent/campaign.json"});
    EXPECT_EQ(refused.port, -1);
    int status = 0;
    ::waitpid(refused.pid, &status, 0);
    EXPECT_EQ(WEXITSTATUS(status), 1);

    // The flag wins over the environment.
    const auto served = spawn_serve({"--port", "0", "--campaign", shipped_path.string()},
                                    {"CRYPTOGAME_CAMPAIGN=/nonexistent/campaign.json",
                                     "CRYPTOGAME_PROFILE_DIR=" + dir.string()});
    ASSERT_GT(served.port, 0);
    httplib::Client client("127.0.0.1", served.port);
    const auto res = client.Post("/api/session", R"({"player_id":"xena"})", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(terminate(served), 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "xena.json"));
    std::filesystem::remove_all(dir);
}
