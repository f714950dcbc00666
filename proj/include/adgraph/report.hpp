#pragma once

#include <span>
#include <string>
#include <vector>

#include "adgraph/chain.hpp"
#include "adgraph/defense.hpp"
#include "adgraph/graph.hpp"
#include "adgraph/scenario.hpp"
#include "adgraph/sim.hpp"
#include "json.hpp"

namespace adgraph {

using Json = nlohmann::json;

/// Pretty-printed JSON with sorted keys and every floating-point value
/// rounded to 6 significant digits. Ends with a newline.
std::string canonical_dump(const Json& value);

/// `value` printed with 6 significant digits ("%.6g").
std::string format_number(double value);

Json to_json(const Grant& grant);
Json to_json(const ScenarioDoc& doc);
Json to_json(const ValidationReport& report);
Json to_json(const HierarchicalGraph& base);
Json to_json(const AttackEdge& edge);
Json to_json(const AttackGraph& graph);
Json to_json(const ChainCheck& check);
Json to_json(const AttackChain& chain);
Json to_json(const PotentialChain& chain);
Json to_json(const DefensePlan& plan);
Json to_json(const std::vector<RiskRow>& rows);
Json to_json(const GameTrace& trace);
Json to_json(const GameSummary& summary);

/// Hierarchical graph plus attack graph, as emitted by `adgraph graph`.
Json graph_document(const HierarchicalGraph& base, const AttackGraph& graph);

/// Graphviz rendering: one cluster per layer, relationships dashed, attack
/// edges solid and labelled "edge_id: permission".
std::string render_dot(const HierarchicalGraph& base, const AttackGraph& graph);

std::string render_validation_text(const ValidationReport& report);
std::string render_chains_text(const std::vector<AttackChain>& chains);
std::string render_potential_text(const std::vector<PotentialChain>& chains);
std::string render_plan_text(const DefensePlan& plan);
std::string render_risk_text(const std::vector<RiskRow>& rows);
std::string render_games_text(std::span<const GameTrace> traces,
                              const GameSummary& summary);

}  // namespace adgraph
