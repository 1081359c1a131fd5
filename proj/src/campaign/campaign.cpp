#include "cryptogame/campaign/campaign.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cryptogame::campaign {

namespace {

std::string child(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
    throw CampaignError(ErrorKind::schema, path, msg);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) schema(child(path, key), "missing required field");
    return *it;
}

void expect_object(const Json& v, const std::string& path) {
    if (!v.is_object()) schema(path, std::string("expected an object, got ") + v.type_name());
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            schema(child(path, key), "unknown field");
        }
    }
}

std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) schema(path, std::string("expected a string, got ") + v.type_name());
    return v.get<std::string>();
}

std::vector<std::string> as_strings(const Json& v, const std::string& path) {
    if (!v.is_array()) schema(path, std::string("expected an array, got ") + v.type_name());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], index_path(path, i)));
    return out;
}

std::vector<std::string> optional_strings(const Json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    return it == obj.end() ? std::vector<std::string>{} : as_strings(*it, child(path, key));
}

const Json& require_array(const Json& obj, const char* key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_array()) schema(child(path, key), std::string("expected an array, got ") + v.type_name());
    return v;
}

LevelNode read_level(const Json& doc, const std::string& path) {
    expect_object(doc, path);
    reject_unknown_keys(doc, {"id", "prerequisites", "story_intro", "story_outro", "topics", "puzzle"}, path);
    LevelNode level;
    level.id = as_string(require(doc, "id", path), child(path, "id"));
    if (level.id.empty()) schema(child(path, "id"), "level id is empty");
    level.prerequisites = optional_strings(doc, "prerequisites", path);
    level.story_intro = as_string(require(doc, "story_intro", path), child(path, "story_intro"));
    level.story_outro = as_string(require(doc, "story_outro", path), child(path, "story_outro"));
    level.topics = optional_strings(doc, "topics", path);
    const auto puzzle_path = child(path, "puzzle");
    try {
        level.spec = puzzle::spec_from_json(require(doc, "puzzle", path), level.id, puzzle_path);
    } catch (const CampaignError&) {
        throw;
    } catch (const puzzle::SchemaError& e) {
        // Re-tag so callers see one error type; the message already names the level.
        throw CampaignError(ErrorKind::schema, e.path(), std::string(e.what()).substr(e.path().size() + 2));
    }
    try {
        puzzle::validate_spec(level.spec);
    } catch (const puzzle::PuzzleError& e) {
        schema(puzzle_path, e.what());
    }
    return level;
}

CodexEntry read_codex(const Json& doc, const std::string& path) {
    expect_object(doc, path);
    reject_unknown_keys(doc, {"id", "title", "body", "unlocked_by", "topics"}, path);
    CodexEntry entry;
    entry.id = as_string(require(doc, "id", path), child(path, "id"));
    if (entry.id.empty()) schema(child(path, "id"), "codex id is empty");
    entry.title = as_string(require(doc, "title", path), child(path, "title"));
    entry.body = as_string(require(doc, "body", path), child(path, "body"));
    entry.unlocked_by = as_string(require(doc, "unlocked_by", path), child(path, "unlocked_by"));
    entry.topics = optional_strings(doc, "topics", path);
    return entry;
}

/// First prerequisite cycle found, as a list of level ids ending where it started.
std::optional<std::vector<std::string>> find_cycle(const std::vector<LevelNode>& levels) {
    std::map<std::string, const LevelNode*> by_id;
    for (const auto& l : levels) by_id[l.id] = &l;
    enum class Mark { white, grey, black };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::optional<std::vector<std::string>> cycle;

    std::function<void(const std::string&)> visit = [&](const std::string& id) {
        if (cycle) return;
        mark[id] = Mark::grey;
        stack.push_back(id);
        for (const auto& dep : by_id.at(id)->prerequisites) {
            if (cycle) return;
            const auto m = mark[dep];
            if (m == Mark::grey) {
                auto start = std::find(stack.begin(), stack.end(), dep);
                cycle = std::vector<std::string>(start, stack.end());
                cycle->push_back(dep);
                return;
            }
            if (m == Mark::white) visit(dep);
        }
        stack.pop_back();
        mark[id] = Mark::black;
    };
    for (const auto& l : levels) {
        if (mark[l.id] == Mark::white) visit(l.id);
        if (cycle) break;
    }
    return cycle;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::schema: return "schema";
        case ErrorKind::dangling_reference: return "dangling reference";
        case ErrorKind::cycle: return "cycle";
        case ErrorKind::unsolvable: return "unsolvable";
        case ErrorKind::coverage: return "coverage";
    }
    return "schema";
}

bool CoverageManifest::has_topic(std::string_view topic) const {
    return std::any_of(groups.begin(), groups.end(), [&](const TopicGroup& g) {
        return std::find(g.topics.begin(), g.topics.end(), topic) != g.topics.end();
    });
}

const CoverageManifest& default_manifest() {
    static const CoverageManifest manifest{{
        {"Classical Cryptography", {"Substitution Ciphers", "Transposition Ciphers"}},
        {"Symmetric-Key Cryptography", {"Block Ciphers", "Stream Ciphers", "Key Management"}},
        {"Public-Key Cryptography", {"Encryption Algorithms", "Elliptic Curve Cryptography", "Diffie-Hellman Key Exchange"}},
        {"Cryptographic Hash Functions", {"Key Concepts", "Common Hash Functions"}},
        {"Key Management and Key Distribution", {"Key Exchange Protocols", "Key Distribution Systems", "Key Escrow"}},
    }};
    return manifest;
}

CoverageManifest manifest_from_json(const Json& doc) {
    expect_object(doc, "");
    reject_unknown_keys(doc, {"groups"}, "");
    CoverageManifest manifest;
    const auto& groups = require_array(doc, "groups", "");
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto path = index_path("groups", i);
        expect_object(groups[i], path);
        reject_unknown_keys(groups[i], {"title", "topics"}, path);
        manifest.groups.push_back({as_string(require(groups[i], "title", path), child(path, "title")),
                                   as_strings(require(groups[i], "topics", path), child(path, "topics"))});
    }
    if (manifest.groups.empty()) schema("groups", "manifest lists no topic groups");
    return manifest;
}

const LevelNode* Campaign::find_level(std::string_view id) const {
    const auto it = std::find_if(levels.begin(), levels.end(), [&](const LevelNode& l) { return l.id == id; });
    return it == levels.end() ? nullptr : &*it;
}

const CodexEntry* Campaign::find_codex(std::string_view id) const {
    const auto it = std::find_if(codex.begin(), codex.end(), [&](const CodexEntry& c) { return c.id == id; });
    return it == codex.end() ? nullptr : &*it;
}

std::vector<std::string> Campaign::level_order() const {
    std::vector<std::string> order;
    for (const auto& ch : chapters) order.insert(order.end(), ch.levels.begin(), ch.levels.end());
    return order;
}

LevelVerification verify_level(const LevelNode& level, std::span<const std::uint64_t> seeds) {
    LevelVerification report{level.id, 0, true, "ok"};
    for (const auto seed : seeds) {
        try {
            const auto inst = puzzle::generate_instance(level.spec, seed);
            const auto solved = puzzle::reference_solve(inst);
            if (!solved.verified) {
                report.ok = false;
                report.detail = "seed " + std::to_string(seed) + ": " + solved.detail;
                return report;
            }
            if (puzzle::check_answer(inst, solved.answer).verdict != puzzle::Verdict::correct) {
                report.ok = false;
                report.detail = "seed " + std::to_string(seed) + ": reference answer rejected";
                return report;
            }
        } catch (const std::exception& e) {
            report.ok = false;
            report.detail = "seed " + std::to_string(seed) + ": " + e.what();
            return report;
        }
        ++report.seeds_checked;
    }
    return report;
}

Campaign load_campaign(const Json& doc, const CoverageManifest& manifest) {
    expect_object(doc, "");
    reject_unknown_keys(doc, {"version", "chapters", "levels", "codex"}, "");
    Campaign c;
    const auto& version = require(doc, "version", "");
    if (!version.is_number_integer()) schema("version", "expected an integer");
    c.version = version.get<int>();
    if (c.version != Campaign::format_version) {
        schema("version", "unsupported campaign format version " + std::to_string(c.version));
    }

    const auto& levels = require_array(doc, "levels", "");
    std::map<std::string, std::size_t> level_index;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        c.levels.push_back(read_level(levels[i], index_path("levels", i)));
        if (!level_index.emplace(c.levels.back().id, i).second) {
            schema(index_path("levels", i) + ".id", "duplicate level id '" + c.levels.back().id + "'");
        }
    }
    if (c.levels.empty()) schema("levels", "campaign has no levels");

    const auto& codex = require_array(doc, "codex", "");
    std::map<std::string, std::size_t> codex_index;
    for (std::size_t i = 0; i < codex.size(); ++i) {
        c.codex.push_back(read_codex(codex[i], index_path("codex", i)));
        if (!codex_index.emplace(c.codex.back().id, i).second) {
            schema(index_path("codex", i) + ".id", "duplicate codex id '" + c.codex.back().id + "'");
        }
    }

    const auto& chapters = require_array(doc, "chapters", "");
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < chapters.size(); ++i) {
        const auto path = index_path("chapters", i);
        expect_object(chapters[i], path);
        reject_unknown_keys(chapters[i], {"title", "levels"}, path);
        Chapter ch{as_string(require(chapters[i], "title", path), child(path, "title")),
                   as_strings(require(chapters[i], "levels", path), child(path, "levels"))};
        for (std::size_t j = 0; j < ch.levels.size(); ++j) {
            const auto lp = index_path(child(path, "levels"), j);
            if (!level_index.count(ch.levels[j])) {
                throw CampaignError(ErrorKind::dangling_reference, lp, "unknown level '" + ch.levels[j] + "'");
            }
            if (!position.emplace(ch.levels[j], position.size()).second) {
                schema(lp, "level '" + ch.levels[j] + "' appears in more than one chapter slot");
            }
        }
        c.chapters.push_back(std::move(ch));
    }
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        if (!position.count(c.levels[i].id)) schema(index_path("levels", i), "level '" + c.levels[i].id + "' is in no chapter");
    }

    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        const auto& l = c.levels[i];
        const auto path = index_path("levels", i);
        for (std::size_t j = 0; j < l.prerequisites.size(); ++j) {
            if (!level_index.count(l.prerequisites[j])) {
                throw CampaignError(ErrorKind::dangling_reference, index_path(path + ".prerequisites", j),
                                    "unknown prerequisite '" + l.prerequisites[j] + "'");
            }
        }
        for (std::size_t j = 0; j < l.spec.codex_refs.size(); ++j) {
            if (!codex_index.count(l.spec.codex_refs[j])) {
                throw CampaignError(ErrorKind::dangling_reference, index_path(path + ".puzzle.codex_refs", j),
                                    "unknown codex entry '" + l.spec.codex_refs[j] + "'");
            }
        }
    }
    for (std::size_t i = 0; i < c.codex.size(); ++i) {
        const auto& e = c.codex[i];
        const auto path = index_path("codex", i) + ".unlocked_by";
        const auto it = level_index.find(e.unlocked_by);
        if (it == level_index.end()) {
            throw CampaignError(ErrorKind::dangling_reference, path, "unknown level '" + e.unlocked_by + "'");
        }
        const auto& refs = c.levels[it->second].spec.codex_refs;
        if (std::find(refs.begin(), refs.end(), e.id) == refs.end()) {
            schema(path, "level '" + e.unlocked_by + "' does not list codex entry '" + e.id + "' in its codex_refs");
        }
    }

    if (const auto cycle = find_cycle(c.levels)) {
        std::string chain;
        for (const auto& id : *cycle) chain += (chain.empty() ? "" : " -> ") + id;
        throw CampaignError(ErrorKind::cycle, index_path("levels", level_index.at(cycle->front())) + ".prerequisites",
                            "prerequisite cycle " + chain);
    }
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        const auto& l = c.levels[i];
        for (std::size_t j = 0; j < l.prerequisites.size(); ++j) {
            if (position.at(l.prerequisites[j]) >= position.at(l.id)) {
                schema(index_path(index_path("levels", i) + ".prerequisites", j),
                       "prerequisite '" + l.prerequisites[j] + "' does not come before '" + l.id + "'");
            }
        }
    }

    if (c.chapters.size() != manifest.groups.size()) {
        throw CampaignError(ErrorKind::coverage, "chapters",
                            "expected " + std::to_string(manifest.groups.size()) + " chapters, one per topic group, found " +
                                std::to_string(c.chapters.size()));
    }
    for (std::size_t i = 0; i < c.chapters.size(); ++i) {
        if (c.chapters[i].title != manifest.groups[i].title) {
            throw CampaignError(ErrorKind::coverage, index_path("chapters", i) + ".title",
                                "expected '" + manifest.groups[i].title + "', found '" + c.chapters[i].title + "'");
        }
    }
    auto check_topics = [&](const std::vector<std::string>& topics, const std::string& path) {
        for (std::size_t j = 0; j < topics.size(); ++j) {
            if (!manifest.has_topic(topics[j])) {
                throw CampaignError(ErrorKind::coverage, index_path(path, j), "topic '" + topics[j] + "' is not in the manifest");
            }
        }
    };
    for (std::size_t i = 0; i < c.levels.size(); ++i) check_topics(c.levels[i].topics, index_path("levels", i) + ".topics");
    for (std::size_t i = 0; i < c.codex.size(); ++i) check_topics(c.codex[i].topics, index_path("codex", i) + ".topics");

    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        const auto report = verify_level(c.levels[i], probe_seeds);
        if (!report.ok) {
            throw CampaignError(ErrorKind::unsolvable, index_path("levels", i) + ".puzzle",
                                "level '" + c.levels[i].id + "' failed verification, " + report.detail);
        }
    }
    return c;
}

Campaign load_campaign_file(const std::filesystem::path& path, const CoverageManifest& manifest) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CampaignError(ErrorKind::schema, path.string(), "cannot open campaign file");
    std::ostringstream text;
    text << in.rdbuf();
    Json doc;
    try {
        doc = Json::parse(text.str());
    } catch (const Json::parse_error& e) {
        throw CampaignError(ErrorKind::schema, "byte " + std::to_string(e.byte), "malformed JSON");
    }
    return load_campaign(doc, manifest);
}

std::vector<std::string> uncovered_topics(const Campaign& campaign, const CoverageManifest& manifest) {
    std::set<std::string> covered;
    for (const auto& l : campaign.levels) covered.insert(l.topics.begin(), l.topics.end());
    for (const auto& e : campaign.codex) covered.insert(e.topics.begin(), e.topics.end());
    std::vector<std::string> missing;
    for (const auto& g : manifest.groups) {
        for (const auto& t : g.topics) {
            if (!covered.count(t)) missing.push_back(g.title + " / " + t);
        }
    }
    return missing;
}

}  // namespace cryptogame::campaign
