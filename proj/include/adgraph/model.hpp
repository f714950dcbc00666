#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adgraph {

/// The four layers of the hierarchical network framework, bottom to top.
inline constexpr std::array<std::string_view, 4> kLayers = {
    "physical", "virtual", "service", "application"};

/// Built-in object categories. Scenarios may declare more under
/// `extensions.categories`.
inline constexpr std::array<std::string_view, 7> kCategories = {
    "hardware-device",  "channel",  "virtual-entity",      "os",
    "control-software", "application-software", "protocol"};

/// Relationship kinds allowed on an edge whose endpoints sit on different
/// layers.
inline constexpr std::array<std::string_view, 4> kVerticalKinds = {
    "functional-support", "resource-sharing", "management", "orchestration"};

/// Index of `layer` in kLayers, or nullopt for an unknown layer name.
std::optional<int> layer_index(std::string_view layer);

/// A permission token is non-empty, lowercase and free of whitespace.
bool is_permission_token(std::string_view token);

/// An attacker capability: `permission` held on `object`. Used both for
/// attack results and for condition requirements.
struct Grant {
  std::string object;
  std::string permission;

  auto operator<=>(const Grant&) const = default;
  bool operator==(const Grant&) const = default;
};

std::string to_string(const Grant& grant);

struct ObjectRecord {
  std::string id;
  std::string layer;
  std::string category;
  std::string label;

  bool operator==(const ObjectRecord&) const = default;
};

struct RelationshipEdge {
  std::string from;
  std::string to;
  std::string kind;
  bool directed = false;

  bool operator==(const RelationshipEdge&) const = default;
};

struct AttackRecord {
  std::string id;
  std::string object;
  std::vector<Grant> condition;
  bool entry_only = false;
  std::string method;
  std::vector<Grant> a_results;
  double cost = 1.0;
  double severity = 1.0;
  double detect_prob = 1.0;

  bool operator==(const AttackRecord&) const = default;
};

struct DefenseRecord {
  std::string id;
  double cost = 0.0;
  std::string method;
  std::vector<std::string> d_results;

  bool operator==(const DefenseRecord&) const = default;
};

struct VulnerabilityRecord {
  std::string id;
  std::string affects_category;
  std::string yields_permission;
  double exploit_cost = 1.0;
  double severity = 1.0;

  bool operator==(const VulnerabilityRecord&) const = default;
};

struct Extensions {
  std::vector<std::string> categories;

  bool operator==(const Extensions&) const = default;
};

/// The on-disk knowledge base. Records keep file order; nothing here is
/// checked until validate_scenario runs.
struct ScenarioDoc {
  std::vector<ObjectRecord> objects;
  std::vector<RelationshipEdge> relationships;
  std::vector<AttackRecord> attacks;
  std::vector<DefenseRecord> defenses;
  std::vector<VulnerabilityRecord> vulnerabilities;
  std::vector<Grant> entry_grants;
  std::vector<std::string> targets;
  Extensions extensions;
  /// JSON paths of keys the loader did not recognise. Not serialized.
  std::vector<std::string> unknown_keys;

  bool operator==(const ScenarioDoc&) const = default;

  const ObjectRecord* find_object(std::string_view id) const;
  const AttackRecord* find_attack(std::string_view id) const;
  const DefenseRecord* find_defense(std::string_view id) const;
};

}  // namespace adgraph
