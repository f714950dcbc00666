#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "adgraph/chain.hpp"
#include "adgraph/defense.hpp"
#include "adgraph/sim.hpp"

namespace adgraph {

// Enum <-> token conversions shared by the config file, the CLI and JSON
// output. Parsers return nullopt for unknown tokens.
std::string_view to_string(Semantics value);
std::string_view to_string(ThreatAggregation value);
std::string_view to_string(ObjectiveKind value);
std::string_view to_string(DefenseMode value);
std::string_view to_string(BudgetObjective value);
std::string_view to_string(AttackerPolicy value);
std::string_view to_string(DefenderPolicy value);
std::string_view to_string(GameOutcome value);

std::optional<Semantics> parse_semantics(std::string_view token);
std::optional<ThreatAggregation> parse_threat_aggregation(std::string_view token);
std::optional<ObjectiveKind> parse_objective(std::string_view token);
std::optional<DefenseMode> parse_defense_mode(std::string_view token);
std::optional<BudgetObjective> parse_budget_objective(std::string_view token);
std::optional<AttackerPolicy> parse_attacker_policy(std::string_view token);
std::optional<DefenderPolicy> parse_defender_policy(std::string_view token);

/// Engine settings a --config file may override. Every key is optional;
/// unknown keys are rejected.
///
///   {"max_len": 8, "semantics": "accumulated", "threat_aggregation": "sum",
///    "budget_objective": "threat", "exact_max_defenses": 20,
///    "exact_max_chains": 64, "sample_size": 5, "default_detect_prob": 1.0,
///    "game": {"max_turns": 10, "attacker_policy": "greedy_cheapest",
///             "defender_policy": "none", "defender_budget_per_turn": 0,
///             "rng_seed": 0, "compromise_permissions": [],
///             "prediction_horizon": 8}}
struct EngineConfig {
  int max_len = 8;
  ChainOptions chain;
  DefenseOptions defense;
  double default_detect_prob = 1.0;
  GameConfig game;
};

/// Throws Error{kInvalidConfig}.
EngineConfig parse_engine_config(std::string_view json_text);
EngineConfig load_engine_config(const std::filesystem::path& path);

}  // namespace adgraph
