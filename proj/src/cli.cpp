#include "adgraph/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "adgraph/chain.hpp"
#include "adgraph/config.hpp"
#include "adgraph/defense.hpp"
#include "adgraph/error.hpp"
#include "adgraph/graph.hpp"
#include "adgraph/report.hpp"
#include "adgraph/scenario.hpp"
#include "adgraph/sim.hpp"

namespace adgraph::cli {

namespace {

struct Common {
  std::string scenario;
  std::string format = "text";
  std::string config;
  bool derive = false;
};

struct Flags {
  std::optional<std::string> target;
  std::optional<std::string> objective;
  std::optional<int> max_len;
  std::optional<std::string> semantics;
  std::string from;
  std::string to;
  std::string mode;
  std::optional<double> budget;
  std::optional<std::string> budget_objective;
  std::vector<std::string> chain;
  std::optional<int> max_turns;
  std::optional<std::string> attacker;
  std::optional<std::string> defender;
  std::optional<double> budget_per_turn;
  std::optional<std::uint64_t> seed;
  std::size_t runs = 1;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kParse:
    case ErrorCode::kInvalidScenario:
    case ErrorCode::kEmptyEntryGrants:
    case ErrorCode::kEmptyTargets:
      return kExitInvalidScenario;
    case ErrorCode::kUnknownObject:
    case ErrorCode::kUnknownEdge:
    case ErrorCode::kUnknownAttack:
    case ErrorCode::kUnknownDefense:
    case ErrorCode::kUnknownTarget:
    case ErrorCode::kInvalidChain:
    case ErrorCode::kInvalidConfig:
      return kExitUsage;
    case ErrorCode::kEmptyInput:
      return kExitInternal;
  }
  return kExitInternal;
}

template <typename T, typename Parse>
T parse_token(const std::string& flag, const std::string& value, Parse parse) {
  auto v = parse(value);
  if (!v) throw UsageError("invalid value for " + flag + ": '" + value + "'");
  return *v;
}

// Applies the chain-related flags on top of the config file values.
void apply_chain_flags(const Flags& f, EngineConfig& cfg) {
  if (f.max_len) {
    if (*f.max_len < 1) throw UsageError("--max-len must be at least 1");
    cfg.max_len = *f.max_len;
  }
  if (f.semantics) {
    cfg.chain.semantics = parse_token<Semantics>("--semantics", *f.semantics, parse_semantics);
    cfg.game.semantics = cfg.chain.semantics;
  }
}

std::vector<std::string> resolve_targets(const ScenarioDoc& doc,
                                         const std::optional<std::string>& target) {
  std::string t = target.value_or("any");
  if (t == "any") return doc.targets;
  if (t == "all") return {};
  if (!doc.find_object(t)) throw UsageError("unknown target object '" + t + "'");
  return {t};
}

struct Output {
  bool json;
  std::string text;
};

class Runner {
 public:
  Runner(const Common& common, const Flags& flags, std::string command)
      : common_(common), flags_(flags), command_(std::move(command)) {}

  CommandResult run() {
    CommandResult result;
    if (common_.format != "json" && common_.format != "text") {
      throw UsageError("--format must be json or text");
    }
    json_ = common_.format == "json";
    if (!common_.config.empty()) {
      try {
        cfg_ = load_engine_config(common_.config);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
    apply_chain_flags(flags_, cfg_);
    doc_ = load_scenario(common_.scenario);
    if (common_.derive) {
      require_valid(doc_);
      doc_ = with_derived_attacks(doc_, cfg_.default_detect_prob);
    }
    auto report = validate_scenario(doc_);
    if (command_ == "validate") {
      result.out = json_ ? canonical_dump(to_json(report)) : render_validation_text(report);
      result.exit_code = report.valid() ? kExitOk : kExitInvalidScenario;
      return result;
    }
    if (!report.valid()) {
      result.err = render_validation_text(report);
      result.exit_code = kExitInvalidScenario;
      return result;
    }
    base_ = build_base_graph(doc_);
    graph_ = build_attack_graph(doc_, base_);

    if (command_ == "graph") return graph();
    if (command_ == "chains") return chains();
    if (command_ == "potential") return potential();
    if (command_ == "defend") return defend();
    if (command_ == "risk") return risk();
    if (command_ == "simulate") return simulate();
    throw UsageError("unknown command " + command_);
  }

 private:
  CommandResult emit(const Json& payload, const std::string& text, int code = kExitOk) {
    CommandResult r;
    r.out = json_ ? canonical_dump(payload) : text;
    r.exit_code = code;
    return r;
  }

  CommandResult graph() {
    return emit(graph_document(base_, graph_), render_dot(base_, graph_));
  }

  CommandResult chains() {
    ChainLimits limits{cfg_.max_len, resolve_targets(doc_, flags_.target)};
    Json payload = {{"semantics", std::string(to_string(cfg_.chain.semantics))},
                    {"max_len", limits.max_len},
                    {"targets", limits.targets}};
    std::string which = flags_.objective.value_or("all");
    if (which == "all") {
      auto found = enumerate_chains(doc_, graph_, limits, cfg_.chain);
      Json list = Json::array();
      for (const auto& c : found) list.push_back(to_json(c));
      payload["chains"] = list;
      return emit(payload, render_chains_text(found));
    }
    auto kind = parse_token<ObjectiveKind>("--objective", which, parse_objective);
    auto best = search_chain(doc_, graph_, {kind, limits}, cfg_.chain);
    payload["objective"] = which;
    payload["chain"] = best ? to_json(*best) : Json(nullptr);
    std::vector<AttackChain> rows;
    if (best) rows.push_back(*best);
    return emit(payload, render_chains_text(rows));
  }

  CommandResult potential() {
    auto found = generate_potential_chains(doc_, base_, graph_, flags_.from, flags_.to,
                                           cfg_.max_len);
    Json list = Json::array();
    for (const auto& c : found) list.push_back(to_json(c));
    Json payload = {{"from", flags_.from},
                    {"to", flags_.to},
                    {"max_len", cfg_.max_len},
                    {"potential_chains", list}};
    return emit(payload, render_potential_text(found));
  }

  CommandResult defend() {
    auto mode = parse_token<DefenseMode>("--mode", flags_.mode, parse_defense_mode);
    if (flags_.budget_objective) {
      cfg_.defense.objective = parse_token<BudgetObjective>(
          "--objective", *flags_.budget_objective, parse_budget_objective);
    }
    ChainLimits limits{cfg_.max_len, resolve_targets(doc_, flags_.target)};
    DefensePlan plan;
    switch (mode) {
      case DefenseMode::kCoverage: {
        AttackChain chain;
        if (!flags_.chain.empty()) {
          chain.edges = flags_.chain;
        } else if (auto best = search_chain(doc_, graph_, {ObjectiveKind::kMinCost, limits},
                                            cfg_.chain)) {
          chain = *best;
        }
        plan = plan_coverage(doc_, graph_, chain, cfg_.chain, cfg_.defense);
        break;
      }
      case DefenseMode::kBudget: {
        if (!flags_.budget) throw UsageError("--mode budget needs --budget");
        if (*flags_.budget < 0) throw UsageError("--budget must be non-negative");
        auto chains = enumerate_chains(doc_, graph_, limits, cfg_.chain);
        plan = plan_budgeted(doc_, graph_, chains, *flags_.budget, cfg_.defense);
        break;
      }
      case DefenseMode::kCut:
        plan = plan_cut(doc_, graph_, doc_.entry_grants, limits.targets, limits,
                        cfg_.chain, cfg_.defense);
        break;
    }
    int code = (mode == DefenseMode::kCut && !plan.feasible) ? kExitInfeasible : kExitOk;
    return emit(to_json(plan), render_plan_text(plan), code);
  }

  CommandResult risk() {
    auto rows = risk_assess(doc_, graph_, cfg_.max_len, cfg_.chain);
    return emit(Json{{"risk", to_json(rows)}}, render_risk_text(rows));
  }

  CommandResult simulate() {
    GameConfig g = cfg_.game;
    if (flags_.max_turns) g.max_turns = *flags_.max_turns;
    if (flags_.attacker) {
      g.attacker_policy = parse_token<AttackerPolicy>("--attacker", *flags_.attacker,
                                                      parse_attacker_policy);
    }
    if (flags_.defender) {
      g.defender_policy = parse_token<DefenderPolicy>("--defender", *flags_.defender,
                                                      parse_defender_policy);
    }
    if (flags_.budget_per_turn) g.defender_budget_per_turn = *flags_.budget_per_turn;
    if (flags_.seed) g.rng_seed = *flags_.seed;
    if (flags_.runs < 1) throw UsageError("--runs must be at least 1");
    auto traces = run_games(doc_, graph_, g, flags_.runs);
    auto summary = summarize(traces);
    Json runs = Json::array();
    for (const auto& t : traces) runs.push_back(to_json(t));
    Json payload = {{"runs", runs}, {"summary", to_json(summary)}};
    return emit(payload, render_games_text(traces, summary));
  }

  const Common& common_;
  const Flags& flags_;
  std::string command_;
  bool json_ = false;
  EngineConfig cfg_;
  ScenarioDoc doc_;
  HierarchicalGraph base_;
  AttackGraph graph_;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--scenario", c.scenario, "Scenario file (JSON)")->required();
  sub->add_option("--format", c.format, "Output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--config", c.config, "Engine config file (JSON)");
  sub->add_flag("--derive", c.derive, "Add attacks derived from vulnerabilities");
}

void add_chain_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--max-len", f.max_len, "Longest chain considered");
  sub->add_option("--semantics", f.semantics, "accumulated or strict");
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Layered attack-graph analysis and defense planning", "adgraph"};
  app.set_version_flag("--version", std::string("adgraph ") + kVersion +
                                        " (scenario schema " +
                                        std::to_string(kSchemaVersion) + ")");
  app.require_subcommand(1);
  Common common;
  Flags flags;

  auto* validate = app.add_subcommand("validate", "Check a scenario for errors");
  add_common(validate, common);

  auto* graph = app.add_subcommand("graph", "Export graphs (json, or DOT as text)");
  add_common(graph, common);

  auto* chains = app.add_subcommand("chains", "Enumerate or search attack chains");
  add_common(chains, common);
  add_chain_flags(chains, flags);
  chains->add_option("--target", flags.target, "Object id, 'any' (scenario targets) or 'all'");
  chains->add_option("--objective", flags.objective, "all, min_cost or max_threat");

  auto* potential = app.add_subcommand("potential", "Find incomplete attack paths");
  add_common(potential, common);
  potential->add_option("--from", flags.from, "Start object")->required();
  potential->add_option("--to", flags.to, "End object")->required();
  potential->add_option("--max-len", flags.max_len, "Longest path in hops");

  auto* defend = app.add_subcommand("defend", "Plan defenses");
  add_common(defend, common);
  add_chain_flags(defend, flags);
  defend->add_option("--mode", flags.mode, "coverage, budget or cut")->required();
  defend->add_option("--budget", flags.budget, "Budget for --mode budget");
  defend->add_option("--objective", flags.budget_objective, "Budget objective: threat or count");
  defend->add_option("--target", flags.target, "Object id, 'any' or 'all'");
  defend->add_option("--chain", flags.chain, "Edge ids of the chain to cover")
      ->delimiter(',');

  auto* risk = app.add_subcommand("risk", "Per-object risk table");
  add_common(risk, common);
  add_chain_flags(risk, flags);

  auto* simulate = app.add_subcommand("simulate", "Attacker versus defender games");
  add_common(simulate, common);
  simulate->add_option("--semantics", flags.semantics, "accumulated or strict");
  simulate->add_option("--max-turns", flags.max_turns, "Turn limit per game");
  simulate->add_option("--attacker", flags.attacker, "greedy_cheapest, max_threat or random");
  simulate->add_option("--defender", flags.defender, "none or reactive_cut");
  simulate->add_option("--budget-per-turn", flags.budget_per_turn, "Defender budget per turn");
  simulate->add_option("--seed", flags.seed, "First RNG seed");
  simulate->add_option("--runs", flags.runs, "Number of games (seeds seed..seed+N-1)");

  std::ostringstream out;
  std::ostringstream err;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return {code == 0 ? kExitOk : kExitUsage, out.str(), err.str()};
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    return Runner(common, flags, command).run();
  } catch (const UsageError& e) {
    return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {exit_code_for(e.code()), "",
            std::string("error: ") + std::string(to_string(e.code())) + ": " + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitInternal, "", std::string("internal error: ") + e.what() + "\n"};
  }
}

}  // namespace adgraph::cli
