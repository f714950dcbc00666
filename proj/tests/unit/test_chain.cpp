#include <gtest/gtest.h>

#include "adgraph/chain.hpp"
#include "adgraph/error.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "random_scenario.hpp"

using namespace adgraph;
using adgraph::testing::attack;
using adgraph::testing::build;
using adgraph::testing::load_data;

namespace {

std::vector<std::string> ids(std::initializer_list<const char*> list) {
  return {list.begin(), list.end()};
}

ScenarioDoc two_step(const std::string& needed) {
  ScenarioDoc doc;
  doc.objects = {adgraph::testing::object("O1"), adgraph::testing::object("O2"),
                 adgraph::testing::object("O3")};
  doc.attacks = {attack("e1", "O1", {{"O1", "read"}}, {{"O2", "read"}}),
                 attack("e2", "O2", {{"O2", needed}}, {{"O3", "read"}})};
  doc.entry_grants = {{"O1", "read"}};
  doc.targets = {"O3"};
  return doc;
}

// A1 from the worked example followed by an attack on O2 that needs the
// grant A1 left on O3.
ScenarioDoc worked_example_followup() {
  auto doc = load_data("worked_example.scenario");
  doc.objects.push_back({"O4", "service", "os", ""});
  doc.attacks.push_back(attack("B", "O2", {{"O3", "execute"}}, {{"O4", "read"}}));
  return doc;
}

}  // namespace

TEST(IsValidChain, InclusionSatisfied) {
  auto b = build(two_step("read"));
  auto check = is_valid_chain(b.doc, b.graph, ids({"e1#0", "e2#0"}));
  EXPECT_TRUE(check.valid);
  ASSERT_EQ(check.trace.size(), 2u);
  EXPECT_EQ(check.trace.back().fired, ids({"e1", "e2"}));
}

TEST(IsValidChain, InclusionUnsatisfied) {
  auto b = build(two_step("write"));
  auto check = is_valid_chain(b.doc, b.graph, ids({"e1#0", "e2#0"}));
  EXPECT_FALSE(check.valid);
  ASSERT_TRUE(check.failed_index);
  EXPECT_EQ(*check.failed_index, 1u);
  EXPECT_EQ(check.reason, "unsatisfied <O2, write>");
}

TEST(IsValidChain, AccumulatedVersusStrict) {
  auto b = build(worked_example_followup());
  auto chain = ids({"A1#0", "B#0"});
  EXPECT_TRUE(is_valid_chain(b.doc, b.graph, chain).valid);
  auto strict = is_valid_chain(b.doc, b.graph, chain, {Semantics::kStrict});
  EXPECT_FALSE(strict.valid);
  EXPECT_EQ(strict.failed_index, std::optional<std::size_t>(1));
}

TEST(IsValidChain, AdjacencyRequired) {
  auto b = build(load_data("toy5g.scenario"));
  auto check = is_valid_chain(b.doc, b.graph, ids({"jam#0", "hvesc#0"}));
  EXPECT_FALSE(check.valid);
  EXPECT_EQ(check.failed_index, std::optional<std::size_t>(1));
}

TEST(IsValidChain, UnknownEdge) {
  auto b = build(load_data("toy5g.scenario"));
  try {
    is_valid_chain(b.doc, b.graph, ids({"jam#7"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownEdge);
  }
}

TEST(IsValidChain, EmptyEntryGrants) {
  auto doc = load_data("toy5g.scenario");
  doc.entry_grants.clear();
  auto b = build(doc);
  try {
    is_valid_chain(b.doc, b.graph, ids({"jam#0"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyEntryGrants);
  }
}

TEST(IsValidChain, EntryOnlyAttackMustLead) {
  auto doc = two_step("read");
  doc.attacks[1].entry_only = true;
  doc.entry_grants.push_back({"O2", "read"});
  auto b = build(doc);
  EXPECT_TRUE(is_valid_chain(b.doc, b.graph, ids({"e2#0"})).valid);
  EXPECT_FALSE(is_valid_chain(b.doc, b.graph, ids({"e1#0", "e2#0"})).valid);
}

TEST(IsValidChain, FiringGrantsAllResults) {
  auto b = build(load_data("toy5g.scenario"));
  auto check = is_valid_chain(b.doc, b.graph, ids({"jam#0", "fakebs#0", "hvesc#1", "scapi#0"}));
  EXPECT_TRUE(check.valid);
  // scapi needs <BS1, execute>, which fakebs granted on its other edge.
  EXPECT_FALSE(is_valid_chain(b.doc, b.graph,
                              ids({"jam#0", "fakebs#0", "hvesc#1", "scapi#0"}),
                              {Semantics::kStrict})
                   .valid);
}

TEST(EnumerateChains, Toy5gToApp1) {
  auto b = build(load_data("toy5g.scenario"));
  auto chains = enumerate_chains(b.doc, b.graph, {4, {"APP1"}});
  ASSERT_EQ(chains.size(), 2u);
  EXPECT_EQ(chains[0].edges, ids({"jam#0", "fakebs#0", "hvesc#0", "vmx#0"}));
  EXPECT_DOUBLE_EQ(chains[0].total_cost, 9.0);
  EXPECT_DOUBLE_EQ(chains[0].total_threat, 18.0);
  EXPECT_EQ(chains[1].edges, ids({"jam#0", "fakebs#0", "hvesc#1", "scapi#0"}));
  EXPECT_DOUBLE_EQ(chains[1].total_cost, 11.0);
  EXPECT_DOUBLE_EQ(chains[1].total_threat, 21.0);
  EXPECT_EQ(enumerate_chains(b.doc, b.graph, {3, {"APP1"}}).size(), 0u);
  EXPECT_EQ(enumerate_chains(b.doc, b.graph, {4, {"APP1"}}, {Semantics::kStrict}).size(), 1u);
}

TEST(EnumerateChains, Toy5gMatchesOracle) {
  auto b = build(load_data("toy5g.scenario"));
  for (bool strict : {false, true}) {
    auto ours = enumerate_chains(b.doc, b.graph, {4, {"APP1"}},
                                 {strict ? Semantics::kStrict : Semantics::kAccumulated});
    auto ref = adgraph::testing::ref_enumerate(b.doc, 4, {"APP1"}, strict);
    ASSERT_EQ(ours.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(ours[i].edges, ref[i].edges);
  }
}

TEST(EnumerateChains, NoEdges) {
  auto doc = load_data("worked_example.scenario");
  doc.attacks.clear();
  auto b = build(doc);
  EXPECT_TRUE(enumerate_chains(b.doc, b.graph, {8, {}}).empty());
}

TEST(EnumerateChains, UnreachableTarget) {
  auto b = build(load_data("toy5g.scenario"));
  EXPECT_TRUE(enumerate_chains(b.doc, b.graph, {8, {"CH1"}}).empty());
}

TEST(EnumerateChains, SortedByLengthThenIds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto b = build(adgraph::testing::random_scenario(seed));
    auto chains = enumerate_chains(b.doc, b.graph, {8, {}});
    for (std::size_t i = 1; i < chains.size(); ++i) {
      const auto& x = chains[i - 1].edges;
      const auto& y = chains[i].edges;
      ASSERT_TRUE(x.size() < y.size() || (x.size() == y.size() && x < y)) << "seed " << seed;
    }
  }
}

TEST(EnumerateChains, ThreatMaxAggregation) {
  auto b = build(load_data("toy5g.scenario"));
  auto chains = enumerate_chains(b.doc, b.graph, {4, {"APP1"}},
                                 {Semantics::kAccumulated, ThreatAggregation::kMax});
  ASSERT_EQ(chains.size(), 2u);
  EXPECT_DOUBLE_EQ(chains[0].total_threat, 7.0);
  EXPECT_DOUBLE_EQ(chains[1].total_threat, 8.0);
}

TEST(SearchChain, CheaperLongerChainWins) {
  auto b = build(adgraph::testing::two_cost_fixture());
  auto best = search_chain(b.doc, b.graph, {ObjectiveKind::kMinCost, {8, {"T"}}});
  ASSERT_TRUE(best);
  EXPECT_DOUBLE_EQ(best->total_cost, 3.0);
  EXPECT_EQ(best->edges, ids({"hop1#0", "hop2#0"}));
  auto capped = search_chain(b.doc, b.graph, {ObjectiveKind::kMinCost, {1, {"T"}}});
  ASSERT_TRUE(capped);
  EXPECT_DOUBLE_EQ(capped->total_cost, 5.0);
}

TEST(SearchChain, Toy5gObjectives) {
  auto b = build(load_data("toy5g.scenario"));
  auto cheap = search_chain(b.doc, b.graph, {ObjectiveKind::kMinCost, {8, {"APP1"}}});
  auto fierce = search_chain(b.doc, b.graph, {ObjectiveKind::kMaxThreat, {8, {"APP1"}}});
  ASSERT_TRUE(cheap && fierce);
  EXPECT_DOUBLE_EQ(cheap->total_cost, 9.0);
  EXPECT_DOUBLE_EQ(fierce->total_threat, 21.0);
}

TEST(SearchChain, SingleChainForBoth) {
  auto b = build(two_step("read"));
  auto cheap = search_chain(b.doc, b.graph, {ObjectiveKind::kMinCost, {8, {"O3"}}});
  auto fierce = search_chain(b.doc, b.graph, {ObjectiveKind::kMaxThreat, {8, {"O3"}}});
  ASSERT_TRUE(cheap && fierce);
  EXPECT_EQ(cheap->edges, fierce->edges);
}

TEST(SearchChain, TieGoesToSmallerIds) {
  ScenarioDoc doc;
  doc.objects = {adgraph::testing::object("E"), adgraph::testing::object("T")};
  doc.attacks = {attack("zeta", "E", {{"E", "read"}}, {{"T", "read"}}, 2.0, 3.0),
                 attack("alpha", "E", {{"E", "read"}}, {{"T", "write"}}, 2.0, 3.0)};
  doc.entry_grants = {{"E", "read"}};
  doc.targets = {"T"};
  auto b = build(doc);
  for (auto kind : {ObjectiveKind::kMinCost, ObjectiveKind::kMaxThreat}) {
    auto best = search_chain(b.doc, b.graph, {kind, {8, {"T"}}});
    ASSERT_TRUE(best);
    EXPECT_EQ(best->edges, ids({"alpha#0"}));
  }
}

TEST(SearchChain, NoneWhenUnreachable) {
  auto b = build(load_data("toy5g.scenario"));
  EXPECT_FALSE(search_chain(b.doc, b.graph, {ObjectiveKind::kMinCost, {8, {"CH1"}}}));
}

TEST(SearchChain, UnknownTarget) {
  auto b = build(load_data("toy5g.scenario"));
  try {
    search_chain(b.doc, b.graph, {ObjectiveKind::kMinCost, {8, {"NOPE"}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownTarget);
  }
}

TEST(SearchChain, MatchesOracleOnRandom) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto b = build(adgraph::testing::random_scenario(seed));
    auto ref = adgraph::testing::ref_enumerate(b.doc, 8, b.doc.targets, false);
    auto cheap = search_chain(b.doc, b.graph, {ObjectiveKind::kMinCost, {8, b.doc.targets}});
    auto fierce = search_chain(b.doc, b.graph, {ObjectiveKind::kMaxThreat, {8, b.doc.targets}});
    ASSERT_EQ(cheap.has_value(), !ref.empty()) << "seed " << seed;
    ASSERT_EQ(fierce.has_value(), !ref.empty()) << "seed " << seed;
    if (ref.empty()) continue;
    EXPECT_NEAR(cheap->total_cost, *adgraph::testing::ref_min_cost(ref), 1e-9);
    EXPECT_NEAR(fierce->total_threat, *adgraph::testing::ref_max_threat(ref), 1e-9);
  }
}

TEST(Engine, WalkApi) {
  auto b = build(load_data("toy5g.scenario"));
  ChainEngine engine(b.doc, b.graph);
  auto w = engine.start();
  EXPECT_EQ(engine.length(w), 0u);
  auto ext = engine.extensions(w);
  ASSERT_EQ(ext.size(), 1u);
  EXPECT_EQ(b.graph.edges()[ext[0]].edge_id, "jam#0");
  w = engine.advance(w, ext[0]);
  EXPECT_EQ(engine.length(w), 1u);
  EXPECT_FALSE(engine.compromised(w, {"APP1"}));
  EXPECT_TRUE(engine.can_compromise(w, {"APP1"}, 3));
  EXPECT_FALSE(engine.can_compromise(w, {"APP1"}, 2));
  auto rest = engine.continuations(w, {8, {"APP1"}});
  ASSERT_EQ(rest.size(), 2u);
  EXPECT_DOUBLE_EQ(rest[0].total_cost, 8.0);
}

TEST(Engine, DisabledAttacks) {
  auto b = build(load_data("toy5g.scenario"));
  EngineScope scope;
  scope.disabled_attacks = {"vmx"};
  ChainEngine engine(b.doc, b.graph, {}, scope);
  auto chains = engine.enumerate({8, {"APP1"}});
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].attacks.back(), "scapi");
}

TEST(Engine, ScenarioTargets) {
  auto b = build(load_data("toy5g.scenario"));
  EXPECT_EQ(scenario_targets(b.doc), ids({"APP1"}));
}
