#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "adgraph/graph.hpp"
#include "adgraph/model.hpp"

namespace adgraph {

/// How an attack's condition is checked along a chain.
///   kAccumulated: against every grant gathered so far.
///   kStrict: against entry grants plus the grant of the previous edge only.
enum class Semantics { kAccumulated, kStrict };

enum class ThreatAggregation { kSum, kMax };

enum class ObjectiveKind { kMinCost, kMaxThreat };

struct ChainOptions {
  Semantics semantics = Semantics::kAccumulated;
  ThreatAggregation threat = ThreatAggregation::kSum;
};

/// `targets` empty means a chain may end anywhere.
struct ChainLimits {
  int max_len = 8;
  std::vector<std::string> targets;
};

struct ChainObjective {
  ObjectiveKind kind = ObjectiveKind::kMinCost;
  ChainLimits limits;
};

struct AttackerState {
  std::vector<Grant> grants;  // sorted
  std::vector<std::string> fired;

  bool operator==(const AttackerState&) const = default;
};

struct AttackChain {
  std::vector<std::string> edges;
  std::vector<std::string> attacks;  // in firing order
  double total_cost = 0.0;
  double total_threat = 0.0;
  std::vector<Grant> final_grants;  // sorted

  bool operator==(const AttackChain&) const = default;
};

struct ChainCheck {
  bool valid = false;
  /// State after each fired edge; on failure, the states before the
  /// failing index.
  std::vector<AttackerState> trace;
  std::optional<std::size_t> failed_index;
  std::string reason;
};

struct PotentialChain {
  struct Hop {
    std::string from;
    std::string to;
    bool operator==(const Hop&) const = default;
  };
  std::vector<std::string> path;
  std::vector<Hop> missing_hops;
  /// Parallel to missing_hops: catalog attack ids, sorted.
  std::vector<std::vector<std::string>> suggestions;

  bool operator==(const PotentialChain&) const = default;
};

/// Restricts which attacks participate and where the attacker starts.
struct EngineScope {
  std::optional<std::vector<Grant>> entry_grants;  // default: scenario's
  std::set<std::string> disabled_attacks;
};

/// Compiled view of an attack graph for chain validity, enumeration and
/// search. Immutable after construction; all queries are const.
/// Partial chain: the edges walked so far plus the derived state. The bit
/// vectors are laid out by the ChainEngine that produced the walk.
struct ChainWalk {
  std::vector<std::size_t> path;  // edge indices into AttackGraph::edges()
  std::vector<std::uint64_t> grants;
  std::vector<std::uint64_t> visited;  // objects already reached by an edge
  std::vector<std::uint64_t> used;     // attacks already fired

  bool operator==(const ChainWalk&) const = default;
};

class ChainEngine {
 public:
  using Walk = ChainWalk;

  ChainEngine(const ScenarioDoc& doc, const AttackGraph& graph,
              ChainOptions options = {}, EngineScope scope = {});
  ~ChainEngine();
  ChainEngine(ChainEngine&&) noexcept;
  ChainEngine& operator=(ChainEngine&&) noexcept;

  ChainCheck check(std::span<const std::string> edge_ids) const;

  /// Every valid chain of length <= max_len ending at a target, ordered by
  /// (length, edge ids).
  std::vector<AttackChain> enumerate(const ChainLimits& limits) const;

  std::optional<AttackChain> search(const ChainObjective& objective) const;

  // Walk-level interface, used by the simulation.
  Walk start() const;
  /// Edge indices (into AttackGraph::edges()) that validly extend `walk`.
  std::vector<std::size_t> extensions(const Walk& walk) const;
  Walk advance(const Walk& walk, std::size_t edge) const;
  /// Grants held after `walk`, sorted.
  std::vector<Grant> grants(const Walk& walk) const;
  std::size_t length(const Walk& walk) const;
  /// True when the walk holds a grant on a target; `permissions` empty
  /// accepts any permission.
  bool compromised(const Walk& walk, const std::vector<std::string>& targets,
                   const std::vector<std::string>& permissions = {}) const;
  /// True when some extension of at most `steps` edges compromises a target.
  bool can_compromise(const Walk& walk, const std::vector<std::string>& targets,
                      int steps,
                      const std::vector<std::string>& permissions = {}) const;
  /// Extensions of `walk` (at most max_len further edges) that end at a
  /// target. Each returned chain holds only the new edges; its totals cover
  /// only the newly fired attacks.
  std::vector<AttackChain> continuations(const Walk& walk,
                                         const ChainLimits& limits) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The scenario's target list.
std::vector<std::string> scenario_targets(const ScenarioDoc& doc);

ChainCheck is_valid_chain(const ScenarioDoc& doc, const AttackGraph& graph,
                          std::span<const std::string> edge_ids,
                          const ChainOptions& options = {});

std::vector<AttackChain> enumerate_chains(const ScenarioDoc& doc,
                                          const AttackGraph& graph,
                                          const ChainLimits& limits,
                                          const ChainOptions& options = {});

std::optional<AttackChain> search_chain(const ScenarioDoc& doc,
                                        const AttackGraph& graph,
                                        const ChainObjective& objective,
                                        const ChainOptions& options = {});

/// Base-graph paths from `from` to `to` (at most max_len hops) that some
/// attack edge fails to cover, with catalog suggestions for each gap.
/// Ordered by (number of missing hops, path).
std::vector<PotentialChain> generate_potential_chains(
    const ScenarioDoc& doc, const HierarchicalGraph& base,
    const AttackGraph& graph, const std::string& from, const std::string& to,
    int max_len);

}  // namespace adgraph
