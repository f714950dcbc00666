#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adgraph/chain.hpp"
#include "adgraph/defense.hpp"
#include "adgraph/graph.hpp"
#include "adgraph/model.hpp"

namespace adgraph {

enum class AttackerPolicy { kGreedyCheapest, kMaxThreat, kRandom };
enum class DefenderPolicy { kNone, kReactiveCut };
enum class GameOutcome { kTargetCompromised, kAttackerExhausted, kTurnLimit };

struct GameConfig {
  int max_turns = 10;
  AttackerPolicy attacker_policy = AttackerPolicy::kGreedyCheapest;
  DefenderPolicy defender_policy = DefenderPolicy::kNone;
  double defender_budget_per_turn = 0.0;
  std::uint64_t rng_seed = 0;
  Semantics semantics = Semantics::kAccumulated;
  /// Permissions on a target that end the game; empty means any.
  std::vector<std::string> compromise_permissions;
  /// Longest continuation the defender predicts after a detection.
  int prediction_horizon = 8;
  DefenseOptions defense;
};

struct TurnRecord {
  int turn = 0;
  std::optional<std::string> edge_id;
  std::optional<std::string> attack_id;
  bool detected = false;
  std::vector<std::string> defenses_applied;
  double defender_cost = 0.0;
  std::vector<Grant> grants;  // after the turn, sorted

  bool operator==(const TurnRecord&) const = default;
};

struct GameTrace {
  std::uint64_t seed = 0;
  std::vector<TurnRecord> turns;
  GameOutcome outcome = GameOutcome::kTurnLimit;
  double attacker_cost = 0.0;
  double defender_cost = 0.0;
  int turns_elapsed = 0;

  bool operator==(const GameTrace&) const = default;
};

/// One seeded attacker-versus-defender game. Pure in (doc, config).
GameTrace run_game(const ScenarioDoc& doc, const AttackGraph& graph,
                   const GameConfig& config);

/// Runs seeds config.rng_seed .. config.rng_seed + runs - 1.
std::vector<GameTrace> run_games(const ScenarioDoc& doc,
                                 const AttackGraph& graph,
                                 const GameConfig& config, std::size_t runs);

struct GameSummary {
  std::size_t runs = 0;
  std::map<std::string, std::size_t> outcomes;
  double mean_turns = 0.0;
  double mean_attacker_cost = 0.0;
  double mean_defender_cost = 0.0;

  bool operator==(const GameSummary&) const = default;
};

/// Throws kEmptyInput for an empty span.
GameSummary summarize(std::span<const GameTrace> traces);

}  // namespace adgraph
