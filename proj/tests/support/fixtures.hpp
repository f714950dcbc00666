#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "adgraph/graph.hpp"
#include "adgraph/model.hpp"

namespace adgraph::testing {

std::filesystem::path data_path(const std::string& name);
std::filesystem::path golden_path(const std::string& name);
std::string read_file(const std::filesystem::path& path);

ScenarioDoc load_data(const std::string& name);

struct Built {
  ScenarioDoc doc;
  HierarchicalGraph base;
  AttackGraph graph;
};

Built build(ScenarioDoc doc);

// Small helpers for hand-built scenarios.
ObjectRecord object(const std::string& id, const std::string& layer = "physical",
                    const std::string& category = "hardware-device");
AttackRecord attack(const std::string& id, const std::string& on,
                    std::vector<Grant> condition, std::vector<Grant> results,
                    double cost = 1.0, double severity = 1.0);
DefenseRecord defense(const std::string& id, double cost, std::vector<std::string> attacks);

// Two chains from E to T: a direct one costing 5 and a two-step one costing 3.
ScenarioDoc two_cost_fixture();

// Three one-edge chains whose defense coverage sets are {d1,d2}, {d1,d3}
// and {d2,d3}, all unit cost.
ScenarioDoc hitting_set_fixture();

// Every chain to T goes through the undefended attack `shared`. With
// `other_defended` the second step can still be cut.
ScenarioDoc shared_undefended_fixture(bool other_defended);

}  // namespace adgraph::testing
