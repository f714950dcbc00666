#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adgraph/chain.hpp"
#include "adgraph/graph.hpp"
#include "adgraph/model.hpp"

namespace adgraph {

enum class DefenseMode { kCoverage, kBudget, kCut };

/// What a budgeted plan maximizes over the chains it breaks.
enum class BudgetObjective { kThreat, kCount };

struct DefenseOptions {
  BudgetObjective objective = BudgetObjective::kThreat;
  std::size_t exact_max_defenses = 20;
  std::size_t exact_max_chains = 64;
  std::size_t sample_size = 5;
};

struct DefensePlan {
  DefenseMode mode = DefenseMode::kCoverage;
  std::vector<std::string> chosen;  // sorted by id
  double total_cost = 0.0;
  std::vector<std::string> neutralized_edges;  // sorted
  std::size_t surviving_count = 0;
  std::vector<AttackChain> surviving_sample;
  bool optimal = true;
  /// Cut: false when some chain contains no defendable attack.
  bool feasible = true;
  /// Coverage: false when some attack on the chain has no defense.
  bool complete = true;
  std::vector<std::string> uncovered_attacks;
  /// Budget: broken chains and their summed value under the objective.
  std::size_t broken_count = 0;
  double broken_value = 0.0;
  std::optional<double> budget;
};

/// Defenses naming `attack_id`, sorted by (cost, id). Throws kUnknownAttack.
std::vector<DefenseRecord> applicable_defenses(const ScenarioDoc& doc,
                                               const std::string& attack_id);

/// Attacks neutralized by the union of `defense_ids`.
std::set<std::string> neutralized_attacks(
    const ScenarioDoc& doc, const std::vector<std::string>& defense_ids);

/// True when `chain` fires an attack that `neutralized` names.
bool is_broken(const AttackChain& chain,
               const std::set<std::string>& neutralized);

/// Cheapest applicable defense for every distinct attack on the chain.
/// Throws kInvalidChain when the chain does not validate.
DefensePlan plan_coverage(const ScenarioDoc& doc, const AttackGraph& graph,
                          const AttackChain& chain,
                          const ChainOptions& chain_options = {},
                          const DefenseOptions& options = {});

/// Defense set within `budget` maximizing the value of chains broken.
DefensePlan plan_budgeted(const ScenarioDoc& doc, const AttackGraph& graph,
                          const std::vector<AttackChain>& chains, double budget,
                          const DefenseOptions& options = {});

/// Minimum-cost defense set after which no valid chain from `entry_grants`
/// reaches any target. Verified by re-enumeration before returning.
DefensePlan plan_cut(const ScenarioDoc& doc, const AttackGraph& graph,
                     const std::vector<Grant>& entry_grants,
                     const std::vector<std::string>& targets,
                     const ChainLimits& limits = {},
                     const ChainOptions& chain_options = {},
                     const DefenseOptions& options = {});

/// Valid chains that survive once `defense_ids` are applied.
std::vector<AttackChain> surviving_chains(
    const ScenarioDoc& doc, const AttackGraph& graph,
    const std::vector<std::string>& defense_ids, const ChainLimits& limits,
    const ChainOptions& chain_options = {},
    std::optional<std::vector<Grant>> entry_grants = std::nullopt);

struct RiskRow {
  std::string object;
  std::size_t chain_count = 0;
  double max_chain_threat = 0.0;
  std::optional<double> min_chain_cost;

  bool operator==(const RiskRow&) const = default;
};

/// Per-object exposure over all valid chains within `max_len`, sorted by
/// max_chain_threat descending then id.
std::vector<RiskRow> risk_assess(const ScenarioDoc& doc,
                                 const AttackGraph& graph, int max_len = 8,
                                 const ChainOptions& options = {});

}  // namespace adgraph
