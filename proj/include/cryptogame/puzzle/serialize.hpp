#pragma once
// JSON shapes for specs and instances. Two instance serializers exist on
// purpose: the view writer only ever sees public fields, the authoring writer
// emits everything and is watermarked.

#include <string>

#include <json.hpp>

#include "cryptogame/puzzle/puzzle.hpp"

namespace cryptogame::puzzle {

using Json = nlohmann::ordered_json;

/// Malformed document. `path` points at the offending field, e.g. "levels[3].puzzle.kind".
class SchemaError : public PuzzleError {
public:
    SchemaError(std::string path, const std::string& message)
        : PuzzleError(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Reads a puzzle object {kind, parameters?, plaintext_pool?, intro, success,
/// codex_refs?, hints[3]}. Absent pools fall back to the shipped pools.
/// Throws SchemaError relative to `path`; does not run validate_spec.
PuzzleSpec spec_from_json(const Json& doc, const std::string& id, const std::string& path);
Json spec_to_json(const PuzzleSpec& spec);

Json parameters_to_json(const PuzzleParameters& params);
PuzzleParameters parameters_from_json(PuzzleKind kind, const Json& doc, const std::string& path);

/// What a player may see: challenge fields only.
Json instance_view_json(const PuzzleInstance& instance);

inline constexpr const char* authoring_watermark = "CONTAINS SOLUTION: authoring use only";

/// Every field, including the solution.
Json instance_authoring_json(const PuzzleInstance& instance);
PuzzleInstance instance_from_authoring_json(const Json& doc);

}  // namespace cryptogame::puzzle
