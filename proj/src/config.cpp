#include "adgraph/config.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "adgraph/error.hpp"
#include "json.hpp"

namespace adgraph {

namespace {

template <typename E, std::size_t N>
using Table = std::array<std::pair<E, std::string_view>, N>;

constexpr Table<Semantics, 2> kSemantics{{{Semantics::kAccumulated, "accumulated"},
                                          {Semantics::kStrict, "strict"}}};
constexpr Table<ThreatAggregation, 2> kThreat{{{ThreatAggregation::kSum, "sum"},
                                               {ThreatAggregation::kMax, "max"}}};
constexpr Table<ObjectiveKind, 2> kObjective{{{ObjectiveKind::kMinCost, "min_cost"},
                                              {ObjectiveKind::kMaxThreat, "max_threat"}}};
constexpr Table<DefenseMode, 3> kMode{{{DefenseMode::kCoverage, "coverage"},
                                       {DefenseMode::kBudget, "budget"},
                                       {DefenseMode::kCut, "cut"}}};
constexpr Table<BudgetObjective, 2> kBudget{{{BudgetObjective::kThreat, "threat"},
                                             {BudgetObjective::kCount, "count"}}};
constexpr Table<AttackerPolicy, 3> kAttacker{
    {{AttackerPolicy::kGreedyCheapest, "greedy_cheapest"},
     {AttackerPolicy::kMaxThreat, "max_threat"},
     {AttackerPolicy::kRandom, "random"}}};
constexpr Table<DefenderPolicy, 2> kDefender{
    {{DefenderPolicy::kNone, "none"}, {DefenderPolicy::kReactiveCut, "reactive_cut"}}};
constexpr Table<GameOutcome, 3> kOutcome{
    {{GameOutcome::kTargetCompromised, "target_compromised"},
     {GameOutcome::kAttackerExhausted, "attacker_exhausted"},
     {GameOutcome::kTurnLimit, "turn_limit"}}};

template <typename E, std::size_t N>
std::string_view name(const Table<E, N>& table, E value) {
  for (const auto& [e, n] : table) {
    if (e == value) return n;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const Table<E, N>& table, std::string_view token) {
  for (const auto& [e, n] : table) {
    if (n == token) return e;
  }
  return std::nullopt;
}

using Json = nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, "config: " + what);
}

template <typename T>
T number(const Json& j, const std::string& key) {
  if (!j.is_number()) bad(key + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) bad(key + " must be an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (j.is_number_unsigned() || j.get<long long>() >= 0) return j.get<T>();
      bad(key + " must be non-negative");
    }
  }
  return j.get<T>();
}

template <typename E, std::size_t N>
E token(const Table<E, N>& table, const Json& j, const std::string& key) {
  if (!j.is_string()) bad(key + " must be a string");
  auto v = lookup(table, j.get<std::string>());
  if (!v) bad("unknown " + key + " '" + j.get<std::string>() + "'");
  return *v;
}

void read_game(const Json& j, GameConfig& g) {
  if (!j.is_object()) bad("game must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "max_turns") g.max_turns = number<int>(v, key);
    else if (key == "attacker_policy") g.attacker_policy = token(kAttacker, v, key);
    else if (key == "defender_policy") g.defender_policy = token(kDefender, v, key);
    else if (key == "defender_budget_per_turn") g.defender_budget_per_turn = number<double>(v, key);
    else if (key == "rng_seed") g.rng_seed = number<std::uint64_t>(v, key);
    else if (key == "prediction_horizon") g.prediction_horizon = number<int>(v, key);
    else if (key == "compromise_permissions") {
      if (!v.is_array()) bad(key + " must be an array");
      g.compromise_permissions.clear();
      for (const auto& p : v) {
        if (!p.is_string()) bad(key + " entries must be strings");
        g.compromise_permissions.push_back(p.get<std::string>());
      }
    } else {
      bad("unknown key game." + key);
    }
  }
}

}  // namespace

std::string_view to_string(Semantics v) { return name(kSemantics, v); }
std::string_view to_string(ThreatAggregation v) { return name(kThreat, v); }
std::string_view to_string(ObjectiveKind v) { return name(kObjective, v); }
std::string_view to_string(DefenseMode v) { return name(kMode, v); }
std::string_view to_string(BudgetObjective v) { return name(kBudget, v); }
std::string_view to_string(AttackerPolicy v) { return name(kAttacker, v); }
std::string_view to_string(DefenderPolicy v) { return name(kDefender, v); }
std::string_view to_string(GameOutcome v) { return name(kOutcome, v); }

std::optional<Semantics> parse_semantics(std::string_view t) { return lookup(kSemantics, t); }
std::optional<ThreatAggregation> parse_threat_aggregation(std::string_view t) {
  return lookup(kThreat, t);
}
std::optional<ObjectiveKind> parse_objective(std::string_view t) { return lookup(kObjective, t); }
std::optional<DefenseMode> parse_defense_mode(std::string_view t) { return lookup(kMode, t); }
std::optional<BudgetObjective> parse_budget_objective(std::string_view t) {
  return lookup(kBudget, t);
}
std::optional<AttackerPolicy> parse_attacker_policy(std::string_view t) {
  return lookup(kAttacker, t);
}
std::optional<DefenderPolicy> parse_defender_policy(std::string_view t) {
  return lookup(kDefender, t);
}

EngineConfig parse_engine_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    bad(e.what());
  }
  if (!root.is_object()) bad("top level must be an object");
  EngineConfig c;
  for (const auto& [key, v] : root.items()) {
    if (key == "max_len") c.max_len = number<int>(v, key);
    else if (key == "semantics") c.chain.semantics = token(kSemantics, v, key);
    else if (key == "threat_aggregation") c.chain.threat = token(kThreat, v, key);
    else if (key == "budget_objective") c.defense.objective = token(kBudget, v, key);
    else if (key == "exact_max_defenses") c.defense.exact_max_defenses = number<std::size_t>(v, key);
    else if (key == "exact_max_chains") c.defense.exact_max_chains = number<std::size_t>(v, key);
    else if (key == "sample_size") c.defense.sample_size = number<std::size_t>(v, key);
    else if (key == "default_detect_prob") c.default_detect_prob = number<double>(v, key);
    else if (key == "game") read_game(v, c.game);
    else bad("unknown key " + key);
  }
  if (c.max_len < 1) bad("max_len must be at least 1");
  if (!(c.default_detect_prob >= 0.0 && c.default_detect_prob <= 1.0)) {
    bad("default_detect_prob must be in [0, 1]");
  }
  c.game.semantics = c.chain.semantics;
  c.game.defense = c.defense;
  return c;
}

EngineConfig load_engine_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_engine_config(buf.str());
}

}  // namespace adgraph
