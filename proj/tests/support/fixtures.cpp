#include "fixtures.hpp"

#include <fstream>
#include <sstream>

#include "adgraph/scenario.hpp"

#ifndef ADGRAPH_SOURCE_DIR
#error "ADGRAPH_SOURCE_DIR must be defined"
#endif

namespace adgraph::testing {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(ADGRAPH_SOURCE_DIR) / "tests" / "data" / name;
}

std::filesystem::path golden_path(const std::string& name) {
  return std::filesystem::path(ADGRAPH_SOURCE_DIR) / "tests" / "golden" / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioDoc load_data(const std::string& name) { return load_scenario(data_path(name)); }

Built build(ScenarioDoc doc) {
  Built b;
  b.doc = std::move(doc);
  b.base = build_base_graph(b.doc);
  b.graph = build_attack_graph(b.doc, b.base);
  return b;
}

ObjectRecord object(const std::string& id, const std::string& layer,
                    const std::string& category) {
  return {id, layer, category, ""};
}

AttackRecord attack(const std::string& id, const std::string& on,
                    std::vector<Grant> condition, std::vector<Grant> results,
                    double cost, double severity) {
  AttackRecord a;
  a.id = id;
  a.object = on;
  a.condition = std::move(condition);
  a.a_results = std::move(results);
  a.cost = cost;
  a.severity = severity;
  return a;
}

DefenseRecord defense(const std::string& id, double cost, std::vector<std::string> attacks) {
  DefenseRecord d;
  d.id = id;
  d.cost = cost;
  d.d_results = std::move(attacks);
  return d;
}

ScenarioDoc two_cost_fixture() {
  ScenarioDoc doc;
  doc.objects = {object("E"), object("M"), object("T", "application", "application-software")};
  doc.attacks = {
      attack("direct", "E", {{"E", "read"}}, {{"T", "read"}}, 5.0, 1.0),
      attack("hop1", "E", {{"E", "read"}}, {{"M", "read"}}, 1.0, 1.0),
      attack("hop2", "M", {{"M", "read"}}, {{"T", "execute"}}, 2.0, 1.0),
  };
  doc.entry_grants = {{"E", "read"}};
  doc.targets = {"T"};
  return doc;
}

ScenarioDoc hitting_set_fixture() {
  ScenarioDoc doc;
  doc.objects = {object("E"), object("T1"), object("T2"), object("T3")};
  doc.attacks = {
      attack("p", "E", {{"E", "read"}}, {{"T1", "read"}}),
      attack("q", "E", {{"E", "read"}}, {{"T2", "read"}}),
      attack("r", "E", {{"E", "read"}}, {{"T3", "read"}}),
  };
  doc.defenses = {defense("d1", 1.0, {"p", "q"}), defense("d2", 1.0, {"p", "r"}),
                  defense("d3", 1.0, {"q", "r"})};
  doc.entry_grants = {{"E", "read"}};
  doc.targets = {"T1", "T2", "T3"};
  return doc;
}

ScenarioDoc shared_undefended_fixture(bool other_defended) {
  ScenarioDoc doc;
  doc.objects = {object("E"), object("M"), object("T")};
  doc.attacks = {
      attack("shared", "E", {{"E", "read"}}, {{"M", "read"}}),
      attack("left", "M", {{"M", "read"}}, {{"T", "read"}}, 2.0),
      attack("right", "M", {{"M", "read"}}, {{"T", "write"}}, 3.0),
  };
  if (other_defended) {
    doc.defenses = {defense("dl", 1.0, {"left"}), defense("dr", 2.0, {"right"}),
                    defense("both", 4.0, {"left", "right"})};
  } else {
    doc.defenses = {defense("dl", 1.0, {"left"})};
  }
  doc.entry_grants = {{"E", "read"}};
  doc.targets = {"T"};
  return doc;
}

}  // namespace adgraph::testing
