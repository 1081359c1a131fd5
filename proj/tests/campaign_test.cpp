#include <gtest/gtest.h>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fstream>
#include <thread>

#include "cryptogame/campaign/campaign.hpp"
#include "cryptogame/crypto/rng.hpp"

using namespace cryptogame;
using namespace cryptogame::campaign;

namespace {

const std::filesystem::path shipped_path = std::filesystem::path(CRYPTOGAME_DATA_DIR) / "campaign.json";

Json shipped_doc() {
    std::ifstream in(shipped_path);
    return Json::parse(in);
}

const Campaign& shipped() {
    static const Campaign c = load_campaign_file(shipped_path);
    return c;
}

ErrorKind load_error(const Json& doc, std::string* path = nullptr, std::string* message = nullptr) {
    try {
        load_campaign(doc);
    } catch (const CampaignError& e) {
        if (path) *path = e.path();
        if (message) *message = e.what();
        return e.kind();
    }
    ADD_FAILURE() << "campaign loaded without error";
    return ErrorKind::schema;
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("cryptogame-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

PlayerProfile random_profile(crypto::Rng& rng) {
    PlayerProfile p;
    p.player_id = "player-" + std::to_string(rng.next() % 100000);
    const auto n = rng.uniform(0, 12);
    for (int i = 0; i < n; ++i) {
        LevelRecord r;
        r.status = static_cast<LevelStatus>(rng.uniform(0, 2));
        if (r.status == LevelStatus::completed || rng.uniform(0, 1)) r.best_score = static_cast<int>(rng.uniform(10, 100));
        r.attempts = rng.uniform(0, 1000);
        r.total_time_ms = rng.uniform(0, 100000000);
        p.levels["level-" + std::to_string(rng.uniform(0, 30))] = r;
    }
    const auto m = rng.uniform(0, 8);
    for (int i = 0; i < m; ++i) p.codex.insert("concept-" + std::to_string(rng.uniform(0, 20)));
    p.current = p.levels.empty() ? "" : p.levels.begin()->first;
    return p;
}

}  // namespace

TEST(LoadCampaign, ShippedCampaignFollowsTopicOrder) {
    const auto& c = shipped();
    ASSERT_EQ(c.chapters.size(), 5u);
    const auto& groups = default_manifest().groups;
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(c.chapters[i].title, groups[i].title);
    EXPECT_EQ(c.chapters[0].title, "Classical Cryptography");
    EXPECT_EQ(c.chapters[4].title, "Key Management and Key Distribution");
    EXPECT_EQ(c.level_order().front(), "caesar");
    EXPECT_EQ(c.find_level("caesar")->spec.kind, puzzle::PuzzleKind::caesar);
    EXPECT_TRUE(uncovered_topics(c, default_manifest()).empty());
}

TEST(LoadCampaign, ShippedCodexIncludesFoundations) {
    const auto& c = shipped();
    for (const char* id : {"caesar-cipher", "modular-arithmetic", "xor-truth-table", "avalanche-effect", "key-escrow"}) {
        EXPECT_NE(c.find_codex(id), nullptr) << id;
    }
}

TEST(LoadCampaign, UnknownKindNamesTheLevel) {
    auto doc = shipped_doc();
    doc["levels"][2]["puzzle"]["kind"] = "ENIGMA";
    std::string path, msg;
    EXPECT_EQ(load_error(doc, &path, &msg), ErrorKind::schema);
    EXPECT_EQ(path, "levels[2].puzzle.kind");
    EXPECT_NE(msg.find("transposition"), std::string::npos) << msg;
}

TEST(LoadCampaign, PrerequisiteCycleIsReported) {
    auto doc = shipped_doc();
    doc["levels"][0]["prerequisites"] = Json::array({"transposition"});
    std::string path, msg;
    EXPECT_EQ(load_error(doc, &path, &msg), ErrorKind::cycle);
    EXPECT_NE(msg.find("->"), std::string::npos) << msg;

    doc = shipped_doc();
    doc["levels"][3]["prerequisites"] = Json::array({"stream"});
    EXPECT_EQ(load_error(doc), ErrorKind::cycle);
}

TEST(LoadCampaign, LaterPrerequisiteRejected) {
    auto doc = shipped_doc();
    // No cycle: transposition is detached from the chain, then required by an earlier level.
    doc["levels"][2]["prerequisites"] = Json::array({"caesar"});
    doc["levels"][1]["prerequisites"] = Json::array({"transposition"});
    std::string path;
    EXPECT_EQ(load_error(doc, &path), ErrorKind::schema);
    EXPECT_EQ(path, "levels[1].prerequisites[0]");
}

TEST(LoadCampaign, DanglingReferences) {
    auto doc = shipped_doc();
    doc["levels"][1]["prerequisites"] = Json::array({"nowhere"});
    std::string path;
    EXPECT_EQ(load_error(doc, &path), ErrorKind::dangling_reference);
    EXPECT_EQ(path, "levels[1].prerequisites[0]");

    doc = shipped_doc();
    doc["levels"][0]["puzzle"]["codex_refs"].push_back("missing-entry");
    EXPECT_EQ(load_error(doc, &path), ErrorKind::dangling_reference);
    EXPECT_EQ(path, "levels[0].puzzle.codex_refs[2]");

    doc = shipped_doc();
    doc["chapters"][1]["levels"].push_back("ghost");
    EXPECT_EQ(load_error(doc, &path), ErrorKind::dangling_reference);
    EXPECT_EQ(path, "chapters[1].levels[3]");

    doc = shipped_doc();
    doc["codex"][0]["unlocked_by"] = "ghost";
    EXPECT_EQ(load_error(doc, &path), ErrorKind::dangling_reference);
    EXPECT_EQ(path, "codex[0].unlocked_by");
}

TEST(LoadCampaign, SchemaViolationsCarryPaths) {
    auto doc = shipped_doc();
    doc["levels"][4]["puzzle"]["parameters"]["rounds"] = 8;
    std::string path;
    EXPECT_EQ(load_error(doc, &path), ErrorKind::schema);
    EXPECT_EQ(path, "levels[4].puzzle.parameters.rounds");

    doc = shipped_doc();
    doc["levels"][0].erase("story_intro");
    EXPECT_EQ(load_error(doc, &path), ErrorKind::schema);
    EXPECT_EQ(path, "levels[0].story_intro");

    doc = shipped_doc();
    doc["levels"][0]["puzzle"]["parameters"]["shift"] = Json::array({0, 30});
    EXPECT_EQ(load_error(doc, &path), ErrorKind::schema);
    EXPECT_EQ(path, "levels[0].puzzle");

    doc = shipped_doc();
    doc["version"] = 2;
    EXPECT_EQ(load_error(doc, &path), ErrorKind::schema);
    EXPECT_EQ(path, "version");

    doc = shipped_doc();
    doc["levels"][1]["id"] = "caesar";
    EXPECT_EQ(load_error(doc, &path), ErrorKind::schema);
    EXPECT_EQ(path, "levels[1].id");
}

TEST(LoadCampaign, CodexMustBeWiredToItsLevel) {
    auto doc = shipped_doc();
    doc["codex"][0]["unlocked_by"] = "substitution";
    std::string path;
    EXPECT_EQ(load_error(doc, &path), ErrorKind::schema);
    EXPECT_EQ(path, "codex[0].unlocked_by");
}

TEST(LoadCampaign, ChapterTitlesMustMatchManifest) {
    auto doc = shipped_doc();
    doc["chapters"][3]["title"] = "Hashing";
    std::string path;
    EXPECT_EQ(load_error(doc, &path), ErrorKind::coverage);
    EXPECT_EQ(path, "chapters[3].title");

    doc = shipped_doc();
    doc["levels"][0]["topics"] = Json::array({"Quantum Cryptography"});
    EXPECT_EQ(load_error(doc, &path), ErrorKind::coverage);
    EXPECT_EQ(path, "levels[0].topics[0]");
}

TEST(Coverage, MissingTopicIsNamed) {
    auto doc = shipped_doc();
    doc["levels"][11]["topics"] = Json::array();
    for (auto& e : doc["codex"]) {
        if (e["id"] == "key-escrow") e["topics"] = Json::array();
    }
    const auto c = load_campaign(doc);
    const auto missing = uncovered_topics(c, default_manifest());
    ASSERT_EQ(missing.size(), 1u);
    EXPECT_EQ(missing[0], "Key Management and Key Distribution / Key Escrow");
}

TEST(Coverage, ManifestFromJson) {
    const auto m = manifest_from_json(Json::parse(R"({"groups":[{"title":"A","topics":["x","y"]}]})"));
    ASSERT_EQ(m.groups.size(), 1u);
    EXPECT_TRUE(m.has_topic("y"));
    EXPECT_FALSE(m.has_topic("z"));
    EXPECT_THROW(manifest_from_json(Json::parse(R"({"groups":[]})")), CampaignError);
}

TEST(VerifyLevel, ShippedLevelsSolveOnHundredSeeds) {
    std::vector<std::uint64_t> seeds(100);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = 1000 + i * 7919;
    for (const auto& level : shipped().levels) {
        const auto report = verify_level(level, seeds);
        EXPECT_TRUE(report.ok) << level.id << ": " << report.detail;
        EXPECT_EQ(report.seeds_checked, 100u);
    }
}

TEST(Unlock, FreshProfileUnlocksOnlyTheFirstLevel) {
    const auto p = fresh_profile(shipped(), "ada");
    const auto state = unlock_state(shipped(), p);
    std::size_t unlocked = 0;
    for (const auto& [id, s] : state) {
        if (s != LevelStatus::locked) {
            ++unlocked;
            EXPECT_EQ(id, "caesar");
        }
    }
    EXPECT_EQ(unlocked, 1u);
    EXPECT_EQ(p.current, "caesar");
    EXPECT_TRUE(p.codex.empty());
}

TEST(Unlock, CompletingEverythingUnlocksEverything) {
    auto p = fresh_profile(shipped(), "ada");
    for (const auto& id : shipped().level_order()) p = record_completion(shipped(), p, id, 90, {1, 1000}).profile;
    for (const auto& [id, s] : unlock_state(shipped(), p)) EXPECT_EQ(s, LevelStatus::completed) << id;
    EXPECT_EQ(p.codex.size(), shipped().codex.size());
}

TEST(Unlock, CompletionUnlocksExactlyDependents) {
    const auto& c = shipped();
    auto p = fresh_profile(c, "ada");
    for (const auto& id : c.level_order()) {
        const auto before = unlock_state(c, p);
        const auto result = record_completion(c, p, id, 80, {2, 5000});
        std::vector<std::string> expected;
        for (const auto& other : c.level_order()) {
            const auto& prereqs = c.find_level(other)->prerequisites;
            const bool depends = std::find(prereqs.begin(), prereqs.end(), id) != prereqs.end();
            const auto after = unlock_state(c, result.profile).at(other);
            if (before.at(other) == LevelStatus::locked && after != LevelStatus::locked) {
                EXPECT_TRUE(depends) << other;
                expected.push_back(other);
            }
        }
        EXPECT_EQ(result.new_levels, expected);
        p = result.profile;
    }
}

TEST(RecordCompletion, CaesarUnlocksCaesarConcept) {
    const auto r = record_completion(shipped(), fresh_profile(shipped(), "ada"), "caesar", 100, {1, 3000});
    EXPECT_NE(std::find(r.new_codex.begin(), r.new_codex.end(), "caesar-cipher"), r.new_codex.end());
    EXPECT_TRUE(r.profile.codex.count("caesar-cipher"));
    EXPECT_EQ(r.profile.levels.at("caesar").best_score, 100);
    EXPECT_EQ(r.profile.current, "substitution");
}

TEST(RecordCompletion, ReplayKeepsBestScore) {
    auto p = record_completion(shipped(), fresh_profile(shipped(), "ada"), "caesar", 88, {1, 1000}).profile;
    const auto lower = record_completion(shipped(), p, "caesar", 40, {5, 9000});
    EXPECT_EQ(lower.profile.levels.at("caesar").best_score, 88);
    EXPECT_TRUE(lower.new_codex.empty());
    EXPECT_EQ(lower.profile.levels.at("caesar").attempts, 6);
    const auto higher = record_completion(shipped(), lower.profile, "caesar", 95, {1, 1000});
    EXPECT_EQ(higher.profile.levels.at("caesar").best_score, 95);
}

TEST(RecordCompletion, LockedLevelRejected) {
    EXPECT_THROW(record_completion(shipped(), fresh_profile(shipped(), "ada"), "rsa", 100, {1, 1}), GatingError);
    EXPECT_THROW(record_completion(shipped(), fresh_profile(shipped(), "ada"), "nope", 100, {1, 1}), GatingError);
}

TEST(RecordCompletion, MonotoneUnlocksAndConsistentCodex) {
    const auto& c = shipped();
    crypto::Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = fresh_profile(c, "p" + std::to_string(trial));
        std::set<std::string> unlocked{"caesar"};
        for (int step = 0; step < 40; ++step) {
            const auto order = c.level_order();
            const auto& id = order[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(order.size()) - 1))];
            try {
                p = record_completion(c, p, id, static_cast<int>(rng.uniform(10, 100)), {1, 100}).profile;
            } catch (const GatingError&) {
                continue;
            }
            std::set<std::string> now;
            std::set<std::string> expected_codex;
            for (const auto& [lid, s] : unlock_state(c, p)) {
                if (s != LevelStatus::locked) now.insert(lid);
                if (s == LevelStatus::completed) {
                    const auto& refs = c.find_level(lid)->spec.codex_refs;
                    expected_codex.insert(refs.begin(), refs.end());
                }
            }
            ASSERT_TRUE(std::includes(now.begin(), now.end(), unlocked.begin(), unlocked.end()));
            ASSERT_EQ(p.codex, expected_codex);
            ASSERT_NE(unlock_state(c, p).at(p.current), LevelStatus::locked);
            unlocked = now;
        }
    }
}

TEST(Persistence, RoundTripHundredRandomProfiles) {
    crypto::Rng rng(2024);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_profile(rng);
        ASSERT_EQ(load_profile(save_profile(p)), p) << save_profile(p);
    }
}

TEST(Persistence, FreshProfileDocumentIsMinimal) {
    const auto doc = Json::parse(save_profile(fresh_profile(shipped(), "ada")));
    EXPECT_EQ(doc["version"], PlayerProfile::save_version);
    EXPECT_EQ(doc["player_id"], "ada");
    EXPECT_TRUE(doc["codex"].empty());
}

TEST(Persistence, NewerVersionNeedsMigration) {
    auto doc = Json::parse(save_profile(fresh_profile(shipped(), "ada")));
    doc["version"] = PlayerProfile::save_version + 1;
    try {
        load_profile(doc.dump());
        FAIL();
    } catch (const ProfileError& e) {
        EXPECT_EQ(e.kind(), ProfileError::Kind::migration);
    }
}

TEST(Persistence, TruncatedDocumentIsParseError) {
    const auto text = save_profile(record_completion(shipped(), fresh_profile(shipped(), "ada"), "caesar", 90, {1, 1}).profile);
    for (std::size_t cut = 0; cut < text.size() - 2; cut += 7) {
        try {
            load_profile(text.substr(0, cut));
            FAIL() << cut;
        } catch (const ProfileError& e) {
            EXPECT_EQ(e.kind(), ProfileError::Kind::parse);
        }
    }
}

TEST(Persistence, FileWriteIsAtomicAndLeavesNoTemporaries) {
    const auto dir = temp_dir() / "atomic";
    std::filesystem::create_directories(dir);
    const auto path = dir / "ada.json";
    const auto p1 = fresh_profile(shipped(), "ada");
    write_profile_file(path, p1);
    EXPECT_EQ(read_profile_file(path), p1);
    const auto p2 = record_completion(shipped(), p1, "caesar", 70, {3, 9000}).profile;
    write_profile_file(path, p2);
    EXPECT_EQ(read_profile_file(path), p2);
    EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}), 1);

    // A corrupted file fails to load and is left as it was.
    { std::ofstream(path) << "{\"version\": 1, \"player"; }
    EXPECT_THROW(read_profile_file(path), ProfileError);
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(content, "{\"version\": 1, \"player");
    std::filesystem::remove_all(dir);
}

TEST(Persistence, KillDuringSaveLeavesReadableVersion) {
    const auto dir = temp_dir() / "kill";
    std::filesystem::create_directories(dir);
    const auto path = dir / "bob.json";
    // Large profiles make each write take long enough to be interrupted mid-flight.
    std::vector<PlayerProfile> versions;
    for (int v = 0; v < 8; ++v) {
        PlayerProfile p;
        p.player_id = "bob";
        for (int i = 0; i < 4000; ++i) p.levels["level-" + std::to_string(i)] = {LevelStatus::completed, 10 + v, v, i};
        p.current = "level-0";
        versions.push_back(std::move(p));
    }
    write_profile_file(path, versions[0]);
    for (int round = 0; round < 6; ++round) {
        const pid_t child = ::fork();
        ASSERT_GE(child, 0);
        if (child == 0) {
            for (int i = 0;; ++i) write_profile_file(path, versions[static_cast<std::size_t>(i % 8)]);
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(15 + 11 * round));
        ::kill(child, SIGKILL);
        int status = 0;
        ::waitpid(child, &status, 0);
        const auto loaded = read_profile_file(path);
        EXPECT_NE(std::find(versions.begin(), versions.end(), loaded), versions.end());
    }
    std::filesystem::remove_all(dir);
}
