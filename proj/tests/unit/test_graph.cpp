#include <gtest/gtest.h>

#include "adgraph/error.hpp"
#include "adgraph/graph.hpp"
#include "adgraph/report.hpp"
#include "fixtures.hpp"
#include "random_scenario.hpp"

using namespace adgraph;
using adgraph::testing::build;
using adgraph::testing::load_data;

TEST(BaseGraph, Toy5gPartition) {
  auto b = build(load_data("toy5g.scenario"));
  EXPECT_EQ(b.base.nodes().size(), 6u);
  EXPECT_EQ(b.base.intra_edges().size(), 3u);
  EXPECT_EQ(b.base.vertical_edges().size(), 2u);
  EXPECT_EQ(b.base.nodes().front().id, "BS1");
  EXPECT_EQ(b.base.nodes().back().id, "APP1");
}

TEST(BaseGraph, UndirectedQueriedBothWays) {
  auto b = build(load_data("toy5g.scenario"));
  EXPECT_TRUE(b.base.linked("CH1", "BS1"));
  EXPECT_TRUE(b.base.linked("BS1", "CH1"));
  EXPECT_FALSE(b.base.linked("CH1", "APP1"));
}

TEST(BaseGraph, NoRelationshipsGivesIsolatedNodes) {
  auto doc = load_data("toy5g.scenario");
  doc.relationships.clear();
  auto b = build(doc);
  EXPECT_EQ(b.base.nodes().size(), 6u);
  EXPECT_TRUE(b.base.intra_edges().empty());
  EXPECT_TRUE(b.base.vertical_edges().empty());
  EXPECT_TRUE(b.base.successors("HV1").empty());
}

TEST(BaseGraph, SingleObject) {
  ScenarioDoc doc;
  doc.objects = {adgraph::testing::object("only")};
  auto b = build(doc);
  EXPECT_EQ(b.base.nodes().size(), 1u);
  EXPECT_TRUE(b.graph.edges().empty());
}

TEST(BaseGraph, InvalidScenarioThrows) {
  auto doc = load_data("toy5g.scenario");
  doc.targets.push_back("missing");
  try {
    build_base_graph(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidScenario);
  }
}

TEST(AttackGraph, WorkedExampleTwoEdges) {
  auto b = build(load_data("worked_example.scenario"));
  ASSERT_EQ(b.graph.edges().size(), 2u);
  const auto& e0 = b.graph.edges()[0];
  const auto& e1 = b.graph.edges()[1];
  EXPECT_EQ(e0.edge_id, "A1#0");
  EXPECT_EQ(e0.from, "O1");
  EXPECT_EQ(e0.to, "O2");
  EXPECT_EQ(e0.permission, "read");
  EXPECT_EQ(e1.edge_id, "A1#1");
  EXPECT_EQ(e1.from, "O1");
  EXPECT_EQ(e1.to, "O3");
  EXPECT_EQ(e1.permission, "execute");
}

TEST(AttackGraph, Toy5gSevenEdges) {
  auto b = build(load_data("toy5g.scenario"));
  EXPECT_EQ(b.graph.edges().size(), 7u);
  EXPECT_TRUE(std::is_sorted(b.graph.edges().begin(), b.graph.edges().end(),
                             [](const AttackEdge& x, const AttackEdge& y) {
                               return x.edge_id < y.edge_id;
                             }));
}

TEST(AttackGraph, EmptyCatalog) {
  auto doc = load_data("worked_example.scenario");
  doc.attacks.clear();
  EXPECT_TRUE(build(doc).graph.edges().empty());
}

TEST(AttackGraph, EdgeCountProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto b = build(adgraph::testing::random_scenario(seed));
    std::size_t expected = 0;
    for (const auto& a : b.doc.attacks) expected += a.a_results.size();
    ASSERT_EQ(b.graph.edges().size(), expected) << "seed " << seed;
  }
}

TEST(AttackGraph, IndependentOfRelationships) {
  auto doc = load_data("toy5g.scenario");
  auto with = build(doc);
  doc.relationships.clear();
  auto without = build(doc);
  EXPECT_NE(canonical_dump(to_json(with.base)), canonical_dump(to_json(without.base)));
  EXPECT_EQ(canonical_dump(to_json(with.graph)), canonical_dump(to_json(without.graph)));
}

TEST(AttackGraph, RemovingRecordRemovesItsEdges) {
  auto doc = load_data("toy5g.scenario");
  doc.attacks.erase(doc.attacks.begin() + 2);  // hvesc
  for (auto& d : doc.defenses) {
    std::erase(d.d_results, "hvesc");
  }
  std::erase_if(doc.defenses, [](const DefenseRecord& d) { return d.d_results.empty(); });
  auto b = build(doc);
  EXPECT_EQ(b.graph.edges().size(), 5u);
  EXPECT_EQ(b.graph.find("hvesc#0"), nullptr);
}

TEST(AttackGraph, Deterministic) {
  auto doc = load_data("toy5g.scenario");
  auto a = build(doc);
  auto b = build(doc);
  EXPECT_EQ(canonical_dump(graph_document(a.base, a.graph)),
            canonical_dump(graph_document(b.base, b.graph)));
  EXPECT_EQ(render_dot(a.base, a.graph), render_dot(b.base, b.graph));
}

TEST(Neighbors, WorkedExample) {
  auto b = build(load_data("worked_example.scenario"));
  auto out = neighbors(b.graph, "O1");
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].edge_id, "A1#0");
  EXPECT_EQ(out[1].edge_id, "A1#1");
  EXPECT_TRUE(neighbors(b.graph, "O3").empty());
}

TEST(Neighbors, TwoRecordsOnOneObject) {
  auto doc = load_data("worked_example.scenario");
  auto extra = adgraph::testing::attack("A0", "O1", {{"O1", "read"}}, {{"O3", "write"}});
  doc.attacks.push_back(extra);
  auto b = build(doc);
  auto out = neighbors(b.graph, "O1");
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].edge_id, "A0#0");
  EXPECT_EQ(out[1].edge_id, "A1#0");
  EXPECT_EQ(out[2].edge_id, "A1#1");
}

TEST(Neighbors, UnknownObject) {
  auto b = build(load_data("worked_example.scenario"));
  try {
    neighbors(b.graph, "O9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownObject);
  }
}

TEST(Dot, LayersAsClusters) {
  auto b = build(load_data("toy5g.scenario"));
  auto dot = render_dot(b.base, b.graph);
  for (const char* layer : {"physical", "virtual", "service", "application"}) {
    EXPECT_NE(dot.find(std::string("subgraph cluster_") + layer), std::string::npos);
  }
  EXPECT_NE(dot.find("\"CH1\" -> \"BS1\" [color=red, label=\"jam#0: disable\"]"),
            std::string::npos);
}
