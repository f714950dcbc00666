#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adgraph/model.hpp"

namespace adgraph::testing {

// Brute-force reference implementations. They rebuild everything from the
// raw ScenarioDoc and share no code with the engines under test.

struct RefEdge {
  std::string id;
  std::string attack;
  std::string from;
  std::string to;
  Grant grant;
};

struct RefChain {
  std::vector<std::string> edges;
  double cost = 0.0;
  double threat = 0.0;
  std::set<Grant> grants;
};

std::vector<RefEdge> ref_edges(const ScenarioDoc& doc);

// Validity of an edge sequence, checked from scratch.
bool ref_valid(const ScenarioDoc& doc, const std::vector<RefEdge>& seq, bool strict,
               const std::set<std::string>& disabled = {});

// All valid chains up to max_len ending in `targets` (empty: anywhere),
// ordered by (length, edge ids).
std::vector<RefChain> ref_enumerate(const ScenarioDoc& doc, int max_len,
                                    const std::vector<std::string>& targets,
                                    bool strict, bool max_threat = false,
                                    const std::set<std::string>& disabled = {});

std::optional<double> ref_min_cost(const std::vector<RefChain>& chains);
std::optional<double> ref_max_threat(const std::vector<RefChain>& chains);

// Attacks neutralized by defense subset `mask` (bit i = doc.defenses[i]).
std::set<std::string> ref_neutralized(const ScenarioDoc& doc, unsigned mask);

// Cheapest defense subset that breaks every chain; nullopt when some chain
// contains no defendable attack.
std::optional<double> ref_min_cut_cost(const ScenarioDoc& doc,
                                       const std::vector<RefChain>& chains);

// Best value reachable within budget. `count` scores chains 1 each,
// otherwise by threat.
double ref_best_budget_value(const ScenarioDoc& doc, const std::vector<RefChain>& chains,
                             double budget, bool count);

}  // namespace adgraph::testing
