#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "adgraph/model.hpp"

namespace adgraph {

/// Reads and parses a scenario file. Throws Error{kIo} when the file cannot
/// be read and Error{kParse} on malformed JSON or mistyped fields.
ScenarioDoc load_scenario(const std::filesystem::path& path);

/// Parses scenario JSON text. `source` names the input in error messages.
ScenarioDoc parse_scenario(std::string_view text,
                           std::string_view source = "<input>");

/// JSON text of the document with sorted keys and lossless numbers.
std::string serialize_scenario(const ScenarioDoc& doc);

struct Issue {
  std::string record_class;
  std::string id;
  std::string message;

  auto operator<=>(const Issue&) const = default;
  bool operator==(const Issue&) const = default;
};

/// Errors break a typed invariant; warnings flag likely authoring mistakes
/// (unknown keys, attack effects with no relationship behind them). Both
/// lists are sorted by (record class, id, message).
struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool valid() const { return errors.empty(); }
};

ValidationReport validate_scenario(const ScenarioDoc& doc);

/// Throws Error{kInvalidScenario} listing the first few errors unless the
/// document validates.
void require_valid(const ScenarioDoc& doc);

struct Derivation {
  std::vector<AttackRecord> attacks;  // sorted by id
  std::vector<Issue> violations;      // id collisions with existing attacks
};

/// One rule: every vulnerability applies to every object of its category.
/// The derived attack needs read access on the object and yields the
/// vulnerability's permission on that same object. Ids are
/// "drv:<vulnerability>:<object>".
Derivation derive_attacks(const ScenarioDoc& doc,
                          double default_detect_prob = 1.0);

/// `doc` with all non-colliding derived attacks appended.
ScenarioDoc with_derived_attacks(const ScenarioDoc& doc,
                                 double default_detect_prob = 1.0);

}  // namespace adgraph
