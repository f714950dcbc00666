#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adgraph/chain.hpp"
#include "adgraph/cli.hpp"
#include "adgraph/config.hpp"
#include "adgraph/defense.hpp"
#include "adgraph/error.hpp"
#include "adgraph/graph.hpp"
#include "adgraph/report.hpp"
#include "adgraph/scenario.hpp"
#include "adgraph/sim.hpp"

namespace py = pybind11;
using namespace adgraph;

namespace {

struct Loaded {
  HierarchicalGraph base;
  AttackGraph graph;
};

Loaded build(const ScenarioDoc& doc) {
  Loaded l;
  l.base = build_base_graph(doc);
  l.graph = build_attack_graph(doc, l.base);
  return l;
}

template <typename T, typename Parse>
T token(const std::string& value, Parse parse, const char* what) {
  auto v = parse(value);
  if (!v) throw Error(ErrorCode::kInvalidConfig, std::string("unknown ") + what + " '" + value + "'");
  return *v;
}

ChainOptions chain_options(const std::string& semantics, const std::string& threat) {
  return {token<Semantics>(semantics, parse_semantics, "semantics"),
          token<ThreatAggregation>(threat, parse_threat_aggregation, "threat aggregation")};
}

std::string dump_chains(const std::vector<AttackChain>& chains) {
  Json list = Json::array();
  for (const auto& c : chains) list.push_back(to_json(c));
  return canonical_dump(list);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "adgraph core bindings";

  py::register_exception<Error>(m, "AdgraphError", PyExc_ValueError);

  py::class_<ScenarioDoc>(m, "Scenario")
      .def_static("load", [](const std::string& path) { return load_scenario(path); })
      .def_static("from_json", [](const std::string& text) { return parse_scenario(text); })
      .def("to_json", &serialize_scenario)
      .def("validate", [](const ScenarioDoc& d) { return canonical_dump(to_json(validate_scenario(d))); })
      .def("derive", [](const ScenarioDoc& d, double dp) { return with_derived_attacks(d, dp); },
           py::arg("default_detect_prob") = 1.0)
      .def_property_readonly("targets", [](const ScenarioDoc& d) { return d.targets; })
      .def_property_readonly("object_ids", [](const ScenarioDoc& d) {
        std::vector<std::string> ids;
        for (const auto& o : d.objects) ids.push_back(o.id);
        return ids;
      })
      .def("__eq__", [](const ScenarioDoc& a, const ScenarioDoc& b) { return a == b; });

  m.def("graph_json", [](const ScenarioDoc& doc) {
    auto l = build(doc);
    return canonical_dump(graph_document(l.base, l.graph));
  });

  m.def("graph_dot", [](const ScenarioDoc& doc) {
    auto l = build(doc);
    return render_dot(l.base, l.graph);
  });

  m.def(
      "enumerate_chains",
      [](const ScenarioDoc& doc, std::vector<std::string> targets, int max_len,
         const std::string& semantics, const std::string& threat) {
        auto l = build(doc);
        return dump_chains(enumerate_chains(doc, l.graph, {max_len, std::move(targets)},
                                            chain_options(semantics, threat)));
      },
      py::arg("doc"), py::arg("targets") = std::vector<std::string>{}, py::arg("max_len") = 8,
      py::arg("semantics") = "accumulated", py::arg("threat") = "sum");

  m.def(
      "search_chain",
      [](const ScenarioDoc& doc, const std::string& objective, std::vector<std::string> targets,
         int max_len, const std::string& semantics, const std::string& threat) {
        auto l = build(doc);
        auto kind = token<ObjectiveKind>(objective, parse_objective, "objective");
        auto best = search_chain(doc, l.graph, {kind, {max_len, std::move(targets)}},
                                 chain_options(semantics, threat));
        return canonical_dump(best ? to_json(*best) : Json(nullptr));
      },
      py::arg("doc"), py::arg("objective") = "min_cost",
      py::arg("targets") = std::vector<std::string>{}, py::arg("max_len") = 8,
      py::arg("semantics") = "accumulated", py::arg("threat") = "sum");

  m.def(
      "check_chain",
      [](const ScenarioDoc& doc, const std::vector<std::string>& edges,
         const std::string& semantics) {
        auto l = build(doc);
        return canonical_dump(
            to_json(is_valid_chain(doc, l.graph, edges, chain_options(semantics, "sum"))));
      },
      py::arg("doc"), py::arg("edges"), py::arg("semantics") = "accumulated");

  m.def(
      "potential_chains",
      [](const ScenarioDoc& doc, const std::string& from, const std::string& to, int max_len) {
        auto l = build(doc);
        Json list = Json::array();
        for (const auto& p : generate_potential_chains(doc, l.base, l.graph, from, to, max_len)) {
          list.push_back(to_json(p));
        }
        return canonical_dump(list);
      },
      py::arg("doc"), py::arg("source"), py::arg("target"), py::arg("max_len") = 8);

  m.def(
      "plan_cut",
      [](const ScenarioDoc& doc, int max_len) {
        auto l = build(doc);
        return canonical_dump(to_json(
            plan_cut(doc, l.graph, doc.entry_grants, doc.targets, {max_len, doc.targets})));
      },
      py::arg("doc"), py::arg("max_len") = 8);

  m.def(
      "plan_budget",
      [](const ScenarioDoc& doc, double budget, const std::string& objective, int max_len) {
        auto l = build(doc);
        DefenseOptions opts;
        opts.objective = token<BudgetObjective>(objective, parse_budget_objective, "objective");
        auto chains = enumerate_chains(doc, l.graph, {max_len, doc.targets});
        return canonical_dump(to_json(plan_budgeted(doc, l.graph, chains, budget, opts)));
      },
      py::arg("doc"), py::arg("budget"), py::arg("objective") = "threat", py::arg("max_len") = 8);

  m.def(
      "plan_coverage",
      [](const ScenarioDoc& doc, const std::vector<std::string>& edges) {
        auto l = build(doc);
        AttackChain chain;
        chain.edges = edges;
        return canonical_dump(to_json(plan_coverage(doc, l.graph, chain)));
      },
      py::arg("doc"), py::arg("edges"));

  m.def(
      "risk",
      [](const ScenarioDoc& doc, int max_len) {
        auto l = build(doc);
        return canonical_dump(to_json(risk_assess(doc, l.graph, max_len)));
      },
      py::arg("doc"), py::arg("max_len") = 8);

  m.def(
      "simulate",
      [](const ScenarioDoc& doc, std::size_t runs, int max_turns, const std::string& attacker,
         const std::string& defender, double budget_per_turn, std::uint64_t seed,
         const std::string& semantics) {
        auto l = build(doc);
        GameConfig cfg;
        cfg.max_turns = max_turns;
        cfg.attacker_policy = token<AttackerPolicy>(attacker, parse_attacker_policy, "attacker");
        cfg.defender_policy = token<DefenderPolicy>(defender, parse_defender_policy, "defender");
        cfg.defender_budget_per_turn = budget_per_turn;
        cfg.rng_seed = seed;
        cfg.semantics = token<Semantics>(semantics, parse_semantics, "semantics");
        auto traces = run_games(doc, l.graph, cfg, runs);
        Json list = Json::array();
        for (const auto& t : traces) list.push_back(to_json(t));
        return canonical_dump(Json{{"runs", list}, {"summary", to_json(summarize(traces))}});
      },
      py::arg("doc"), py::arg("runs") = 1, py::arg("max_turns") = 10,
      py::arg("attacker") = "greedy_cheapest", py::arg("defender") = "none",
      py::arg("budget_per_turn") = 0.0, py::arg("seed") = 0, py::arg("semantics") = "accumulated");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    auto r = cli::run(args);
    return py::make_tuple(r.exit_code, r.out, r.err);
  });

  m.attr("__version__") = cli::kVersion;
}
