#include "adgraph/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "adgraph/config.hpp"
#include "adgraph/error.hpp"

namespace adgraph {

namespace {

// Uniform in [0, 1) from the top 53 bits; std distributions are not
// reproducible across standard library implementations.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_config(const ScenarioDoc& doc, const GameConfig& config) {
  if (config.max_turns < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_turns must be at least 1");
  }
  if (!(config.defender_budget_per_turn >= 0.0) ||
      !std::isfinite(config.defender_budget_per_turn)) {
    throw Error(ErrorCode::kInvalidConfig,
                "defender_budget_per_turn must be a non-negative number");
  }
  if (config.prediction_horizon < 1) {
    throw Error(ErrorCode::kInvalidConfig,
                "prediction_horizon must be at least 1");
  }
  if (doc.entry_grants.empty()) {
    throw Error(ErrorCode::kEmptyEntryGrants, "the game needs entry grants");
  }
  if (doc.targets.empty()) {
    throw Error(ErrorCode::kEmptyTargets, "the game needs at least one target");
  }
}

}  // namespace

GameTrace run_game(const ScenarioDoc& doc, const AttackGraph& graph,
                   const GameConfig& config) {
  check_config(doc, config);
  ChainOptions options{config.semantics, ThreatAggregation::kSum};
  EngineScope scope;
  auto engine = std::make_unique<ChainEngine>(doc, graph, options, scope);
  const auto& targets = doc.targets;
  const auto& perms = config.compromise_permissions;
  std::mt19937_64 rng(config.rng_seed);

  GameTrace trace;
  trace.seed = config.rng_seed;
  ChainWalk walk = engine->start();
  bool seen = false;
  std::optional<GameOutcome> outcome;
  if (engine->compromised(walk, targets, perms)) {
    outcome = GameOutcome::kTargetCompromised;
  }

  for (int turn = 1; turn <= config.max_turns && !outcome; ++turn) {
    TurnRecord record;
    record.turn = turn;
    const int left_after = config.max_turns - turn;

    // Attacker prefers moves from which a target stays reachable in the
    // turns left, and otherwise takes any available move.
    auto available = engine->extensions(walk);
    std::vector<std::size_t> moves;
    for (std::size_t e : available) {
      if (engine->can_compromise(engine->advance(walk, e), targets, left_after,
                                 perms)) {
        moves.push_back(e);
      }
    }
    if (moves.empty()) moves = available;
    if (moves.empty()) {
      record.grants = engine->grants(walk);
      trace.turns.push_back(std::move(record));
      outcome = GameOutcome::kAttackerExhausted;
      break;
    }

    const auto& edges = graph.edges();
    std::size_t pick = moves.front();
    switch (config.attacker_policy) {
      case AttackerPolicy::kGreedyCheapest:
        for (std::size_t e : moves) {
          if (edges[e].cost < edges[pick].cost) pick = e;
        }
        break;
      case AttackerPolicy::kMaxThreat:
        for (std::size_t e : moves) {
          if (edges[e].severity > edges[pick].severity) pick = e;
        }
        break;
      case AttackerPolicy::kRandom: {
        auto i = static_cast<std::size_t>(unit(rng) * static_cast<double>(moves.size()));
        pick = moves[std::min(i, moves.size() - 1)];
        break;
      }
    }

    const AttackEdge& fired = edges[pick];
    walk = engine->advance(walk, pick);
    record.edge_id = fired.edge_id;
    record.attack_id = fired.attack_id;
    trace.attacker_cost += fired.cost;
    record.detected = unit(rng) < fired.detect_prob;
    seen = seen || record.detected;

    if (engine->compromised(walk, targets, perms)) {
      outcome = GameOutcome::kTargetCompromised;
    } else if (config.defender_policy == DefenderPolicy::kReactiveCut && seen &&
               left_after > 0) {
      int horizon = std::min(config.prediction_horizon, left_after);
      auto predicted = engine->continuations(walk, {horizon, targets});
      if (!predicted.empty()) {
        auto plan = plan_budgeted(doc, graph, predicted,
                                  config.defender_budget_per_turn, config.defense);
        if (!plan.chosen.empty()) {
          record.defenses_applied = plan.chosen;
          record.defender_cost = plan.total_cost;
          trace.defender_cost += plan.total_cost;
          auto more = neutralized_attacks(doc, plan.chosen);
          scope.disabled_attacks.insert(more.begin(), more.end());
          engine = std::make_unique<ChainEngine>(doc, graph, options, scope);
        }
      }
    }
    record.grants = engine->grants(walk);
    trace.turns.push_back(std::move(record));
  }

  trace.outcome = outcome.value_or(GameOutcome::kTurnLimit);
  trace.turns_elapsed = static_cast<int>(trace.turns.size());
  return trace;
}

std::vector<GameTrace> run_games(const ScenarioDoc& doc,
                                 const AttackGraph& graph,
                                 const GameConfig& config, std::size_t runs) {
  std::vector<GameTrace> traces;
  traces.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    GameConfig c = config;
    c.rng_seed = config.rng_seed + i;
    traces.push_back(run_game(doc, graph, c));
  }
  return traces;
}

GameSummary summarize(std::span<const GameTrace> traces) {
  if (traces.empty()) {
    throw Error(ErrorCode::kEmptyInput, "nothing to summarize");
  }
  GameSummary s;
  s.runs = traces.size();
  double turns = 0.0;
  double attacker = 0.0;
  double defender = 0.0;
  for (const auto& t : traces) {
    ++s.outcomes[std::string(to_string(t.outcome))];
    turns += t.turns_elapsed;
    attacker += t.attacker_cost;
    defender += t.defender_cost;
  }
  const auto n = static_cast<double>(traces.size());
  s.mean_turns = turns / n;
  s.mean_attacker_cost = attacker / n;
  s.mean_defender_cost = defender / n;
  return s;
}

}  // namespace adgraph
