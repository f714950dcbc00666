#include "adgraph/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "adgraph/config.hpp"

namespace adgraph {

namespace {

void round_floats(Json& j) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (std::isfinite(v)) {
      v = std::strtod(format_number(v).c_str(), nullptr);
      if (v == 0.0) v = 0.0;  // drop the sign of negative zero
      j = v;
    } else {
      j = nullptr;
    }
  } else if (j.is_structured()) {
    for (auto& child : j) round_floats(child);
  }
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

Json grants(const std::vector<Grant>& v) {
  Json out = Json::array();
  for (const auto& g : v) out.push_back(to_json(g));
  return out;
}

Json issue(const Issue& i) {
  return {{"record_class", i.record_class}, {"id", i.id}, {"message", i.message}};
}

Json relationship(const RelationshipEdge& r) {
  return {{"from", r.from}, {"to", r.to}, {"kind", r.kind}, {"directed", r.directed}};
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string canonical_dump(const Json& value) {
  Json copy = value;
  round_floats(copy);
  return copy.dump(2) + "\n";
}

Json to_json(const Grant& g) {
  return {{"object", g.object}, {"permission", g.permission}};
}

Json to_json(const ScenarioDoc& doc) {
  Json j;
  j["objects"] = Json::array();
  for (const auto& o : doc.objects) {
    j["objects"].push_back(
        {{"id", o.id}, {"layer", o.layer}, {"category", o.category}, {"label", o.label}});
  }
  j["relationships"] = Json::array();
  for (const auto& r : doc.relationships) j["relationships"].push_back(relationship(r));
  j["attacks"] = Json::array();
  for (const auto& a : doc.attacks) {
    j["attacks"].push_back({{"id", a.id},
                            {"object", a.object},
                            {"condition",
                             {{"grants", grants(a.condition)}, {"entry_only", a.entry_only}}},
                            {"method", a.method},
                            {"a_results", grants(a.a_results)},
                            {"cost", a.cost},
                            {"severity", a.severity},
                            {"detect_prob", a.detect_prob}});
  }
  j["defenses"] = Json::array();
  for (const auto& d : doc.defenses) {
    j["defenses"].push_back({{"id", d.id},
                             {"cost", d.cost},
                             {"method", d.method},
                             {"d_results", strings(d.d_results)}});
  }
  j["vulnerabilities"] = Json::array();
  for (const auto& v : doc.vulnerabilities) {
    j["vulnerabilities"].push_back({{"id", v.id},
                                    {"affects_category", v.affects_category},
                                    {"yields_permission", v.yields_permission},
                                    {"exploit_cost", v.exploit_cost},
                                    {"severity", v.severity}});
  }
  j["entry_grants"] = grants(doc.entry_grants);
  j["targets"] = strings(doc.targets);
  j["extensions"] = {{"categories", strings(doc.extensions.categories)}};
  return j;
}

Json to_json(const ValidationReport& report) {
  Json errors = Json::array();
  Json warnings = Json::array();
  for (const auto& e : report.errors) errors.push_back(issue(e));
  for (const auto& w : report.warnings) warnings.push_back(issue(w));
  return {{"valid", report.valid()}, {"errors", errors}, {"warnings", warnings}};
}

Json to_json(const HierarchicalGraph& base) {
  Json nodes = Json::array();
  for (const auto& n : base.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"layer", std::string(kLayers[n.layer])},
                     {"category", n.category},
                     {"label", n.label}});
  }
  Json intra = Json::array();
  Json vertical = Json::array();
  for (const auto& r : base.intra_edges()) intra.push_back(relationship(r));
  for (const auto& r : base.vertical_edges()) vertical.push_back(relationship(r));
  return {{"nodes", nodes}, {"intra_edges", intra}, {"vertical_edges", vertical}};
}

Json to_json(const AttackEdge& e) {
  return {{"edge_id", e.edge_id},   {"attack_id", e.attack_id},
          {"from", e.from},         {"to", e.to},
          {"permission", e.permission}, {"cost", e.cost},
          {"severity", e.severity}, {"detect_prob", e.detect_prob}};
}

Json to_json(const AttackGraph& graph) {
  Json edges = Json::array();
  for (const auto& e : graph.edges()) edges.push_back(to_json(e));
  return {{"edges", edges}};
}

Json graph_document(const HierarchicalGraph& base, const AttackGraph& graph) {
  return {{"hierarchical_graph", to_json(base)}, {"attack_graph", to_json(graph)}};
}

Json to_json(const ChainCheck& check) {
  Json trace = Json::array();
  for (const auto& s : check.trace) {
    trace.push_back({{"grants", grants(s.grants)}, {"fired", strings(s.fired)}});
  }
  return {{"valid", check.valid},
          {"failed_index", check.failed_index ? Json(*check.failed_index) : Json(nullptr)},
          {"reason", check.reason},
          {"trace", trace}};
}

Json to_json(const AttackChain& c) {
  return {{"edges", strings(c.edges)},
          {"attacks", strings(c.attacks)},
          {"total_cost", c.total_cost},
          {"total_threat", c.total_threat},
          {"final_grants", grants(c.final_grants)}};
}

Json to_json(const PotentialChain& c) {
  Json hops = Json::array();
  for (std::size_t i = 0; i < c.missing_hops.size(); ++i) {
    hops.push_back({{"from", c.missing_hops[i].from},
                    {"to", c.missing_hops[i].to},
                    {"suggestions", strings(c.suggestions[i])}});
  }
  return {{"path", strings(c.path)}, {"missing_hops", hops}};
}

Json to_json(const DefensePlan& p) {
  Json sample = Json::array();
  for (const auto& c : p.surviving_sample) sample.push_back(to_json(c));
  return {{"mode", std::string(to_string(p.mode))},
          {"chosen", strings(p.chosen)},
          {"total_cost", p.total_cost},
          {"neutralized_edges", strings(p.neutralized_edges)},
          {"surviving_chains", {{"count", p.surviving_count}, {"sample", sample}}},
          {"optimal", p.optimal},
          {"feasible", p.feasible},
          {"complete", p.complete},
          {"uncovered_attacks", strings(p.uncovered_attacks)},
          {"broken_chains", {{"count", p.broken_count}, {"value", p.broken_value}}},
          {"budget", optional_number(p.budget)}};
}

Json to_json(const std::vector<RiskRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"object", r.object},
                   {"chain_count", r.chain_count},
                   {"max_chain_threat", r.max_chain_threat},
                   {"min_chain_cost", optional_number(r.min_chain_cost)}});
  }
  return out;
}

Json to_json(const GameTrace& t) {
  Json turns = Json::array();
  for (const auto& r : t.turns) {
    turns.push_back({{"turn", r.turn},
                     {"edge_id", r.edge_id ? Json(*r.edge_id) : Json(nullptr)},
                     {"attack_id", r.attack_id ? Json(*r.attack_id) : Json(nullptr)},
                     {"detected", r.detected},
                     {"defenses_applied", strings(r.defenses_applied)},
                     {"defender_cost", r.defender_cost},
                     {"grants", grants(r.grants)}});
  }
  return {{"seed", t.seed},
          {"outcome", std::string(to_string(t.outcome))},
          {"turns", turns},
          {"totals",
           {{"attacker_cost", t.attacker_cost},
            {"defender_cost", t.defender_cost},
            {"turns_elapsed", t.turns_elapsed}}}};
}

Json to_json(const GameSummary& s) {
  return {{"runs", s.runs},
          {"outcomes", s.outcomes},
          {"mean_turns", s.mean_turns},
          {"mean_attacker_cost", s.mean_attacker_cost},
          {"mean_defender_cost", s.mean_defender_cost}};
}

std::string render_dot(const HierarchicalGraph& base, const AttackGraph& graph) {
  std::ostringstream out;
  out << "digraph adgraph {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t layer = 0; layer < kLayers.size(); ++layer) {
    out << "  subgraph cluster_" << kLayers[layer] << " {\n"
        << "    label=" << quoted(std::string(kLayers[layer])) << ";\n";
    for (const auto& n : base.nodes()) {
      if (n.layer != static_cast<int>(layer)) continue;
      out << "    " << quoted(n.id) << " [label=" << quoted(n.id + "\n" + n.category)
          << "];\n";
    }
    out << "  }\n";
  }
  auto rel = [&](const RelationshipEdge& r) {
    out << "  " << quoted(r.from) << " -> " << quoted(r.to)
        << " [style=dashed, color=gray, label=" << quoted(r.kind)
        << (r.directed ? "" : ", dir=none") << "];\n";
  };
  for (const auto& r : base.intra_edges()) rel(r);
  for (const auto& r : base.vertical_edges()) rel(r);
  for (const auto& e : graph.edges()) {
    out << "  " << quoted(e.from) << " -> " << quoted(e.to)
        << " [color=red, label=" << quoted(e.edge_id + ": " + e.permission) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string render_validation_text(const ValidationReport& r) {
  std::ostringstream out;
  out << (r.valid() ? "valid" : "invalid") << "\n";
  for (const auto& e : r.errors) {
    out << "error: " << e.record_class << " " << e.id << ": " << e.message << "\n";
  }
  for (const auto& w : r.warnings) {
    out << "warning: " << w.record_class << " " << w.id << ": " << w.message << "\n";
  }
  return out.str();
}

std::string render_chains_text(const std::vector<AttackChain>& chains) {
  std::ostringstream out;
  out << pad("#", 5) << pad("cost", 10) << pad("threat", 10) << "edges\n";
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto& c = chains[i];
    out << pad(std::to_string(i + 1), 5) << pad(format_number(c.total_cost), 10)
        << pad(format_number(c.total_threat), 10) << join(c.edges, " -> ") << "\n";
  }
  out << chains.size() << " chain(s)\n";
  return out.str();
}

std::string render_potential_text(const std::vector<PotentialChain>& chains) {
  std::ostringstream out;
  for (const auto& c : chains) {
    out << join(c.path, " -> ") << "  (" << c.missing_hops.size() << " missing)\n";
    for (std::size_t i = 0; i < c.missing_hops.size(); ++i) {
      out << "  gap " << c.missing_hops[i].from << " -> " << c.missing_hops[i].to
          << ": " << (c.suggestions[i].empty() ? "-" : join(c.suggestions[i], ", "))
          << "\n";
    }
  }
  out << chains.size() << " potential chain(s)\n";
  return out.str();
}

std::string render_plan_text(const DefensePlan& p) {
  std::ostringstream out;
  out << "mode: " << to_string(p.mode) << "\n"
      << "chosen: " << (p.chosen.empty() ? "-" : join(p.chosen, ", ")) << "\n"
      << "total cost: " << format_number(p.total_cost) << "\n"
      << "neutralized edges: "
      << (p.neutralized_edges.empty() ? "-" : join(p.neutralized_edges, ", ")) << "\n"
      << "surviving chains: " << p.surviving_count << "\n"
      << "optimal: " << (p.optimal ? "yes" : "no") << "\n";
  if (p.mode == DefenseMode::kCut) {
    out << "feasible: " << (p.feasible ? "yes" : "no") << "\n";
  }
  if (p.mode == DefenseMode::kCoverage) {
    out << "complete: " << (p.complete ? "yes" : "no") << "\n";
    if (!p.uncovered_attacks.empty()) {
      out << "uncovered attacks: " << join(p.uncovered_attacks, ", ") << "\n";
    }
  }
  if (p.mode == DefenseMode::kBudget) {
    out << "budget: " << format_number(p.budget.value_or(0.0)) << "\n"
        << "broken chains: " << p.broken_count << " (value "
        << format_number(p.broken_value) << ")\n";
  }
  for (const auto& c : p.surviving_sample) {
    out << "  survives: " << join(c.edges, " -> ") << "\n";
  }
  return out.str();
}

std::string render_risk_text(const std::vector<RiskRow>& rows) {
  std::ostringstream out;
  out << pad("object", 16) << pad("chains", 8) << pad("max_threat", 12) << "min_cost\n";
  for (const auto& r : rows) {
    out << pad(r.object, 16) << pad(std::to_string(r.chain_count), 8)
        << pad(format_number(r.max_chain_threat), 12)
        << (r.min_chain_cost ? format_number(*r.min_chain_cost) : "-") << "\n";
  }
  return out.str();
}

std::string render_games_text(std::span<const GameTrace> traces,
                              const GameSummary& s) {
  std::ostringstream out;
  for (const auto& t : traces) {
    std::vector<std::string> fired;
    for (const auto& r : t.turns) {
      if (r.edge_id) fired.push_back(*r.edge_id + (r.detected ? "!" : ""));
    }
    out << "seed " << t.seed << ": " << to_string(t.outcome) << " after "
        << t.turns_elapsed << " turn(s), attacker " << format_number(t.attacker_cost)
        << ", defender " << format_number(t.defender_cost) << "  ["
        << join(fired, " ") << "]\n";
  }
  out << "runs: " << s.runs << "\n";
  for (const auto& [outcome, n] : s.outcomes) out << "  " << outcome << ": " << n << "\n";
  out << "mean turns: " << format_number(s.mean_turns) << "\n"
      << "mean attacker cost: " << format_number(s.mean_attacker_cost) << "\n"
      << "mean defender cost: " << format_number(s.mean_defender_cost) << "\n";
  return out.str();
}

}  // namespace adgraph
