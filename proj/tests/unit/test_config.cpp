#include <gtest/gtest.h>

#include "adgraph/config.hpp"
#include "adgraph/error.hpp"

using namespace adgraph;

TEST(Config, DefaultsWhenEmpty) {
  auto cfg = parse_engine_config("{}");
  EXPECT_EQ(cfg.max_len, 8);
  EXPECT_EQ(cfg.chain.semantics, Semantics::kAccumulated);
  EXPECT_EQ(cfg.defense.exact_max_defenses, 20u);
  EXPECT_EQ(cfg.game.max_turns, 10);
}

TEST(Config, Overrides) {
  auto cfg = parse_engine_config(R"({"max_len": 4, "semantics": "strict",
    "threat_aggregation": "max", "budget_objective": "count",
    "game": {"max_turns": 3, "attacker_policy": "random", "defender_policy": "reactive_cut",
             "defender_budget_per_turn": 2.5, "rng_seed": 9}})");
  EXPECT_EQ(cfg.max_len, 4);
  EXPECT_EQ(cfg.chain.semantics, Semantics::kStrict);
  EXPECT_EQ(cfg.chain.threat, ThreatAggregation::kMax);
  EXPECT_EQ(cfg.defense.objective, BudgetObjective::kCount);
  EXPECT_EQ(cfg.game.semantics, Semantics::kStrict);
  EXPECT_EQ(cfg.game.attacker_policy, AttackerPolicy::kRandom);
  EXPECT_EQ(cfg.game.defender_policy, DefenderPolicy::kReactiveCut);
  EXPECT_DOUBLE_EQ(cfg.game.defender_budget_per_turn, 2.5);
  EXPECT_EQ(cfg.game.rng_seed, 9u);
}

TEST(Config, Rejections) {
  for (const char* bad : {R"({"max_len": 0})", R"({"semantics": "loose"})", R"({"colour": 1})",
                          R"({"game": {"max_turns": "x"}})", "[1,2]", "{"}) {
    try {
      parse_engine_config(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig) << bad;
    }
  }
}

TEST(Config, TokensRoundTrip) {
  for (auto s : {Semantics::kAccumulated, Semantics::kStrict}) {
    EXPECT_EQ(parse_semantics(to_string(s)), s);
  }
  for (auto p : {AttackerPolicy::kGreedyCheapest, AttackerPolicy::kMaxThreat,
                 AttackerPolicy::kRandom}) {
    EXPECT_EQ(parse_attacker_policy(to_string(p)), p);
  }
  for (auto m : {DefenseMode::kCoverage, DefenseMode::kBudget, DefenseMode::kCut}) {
    EXPECT_EQ(parse_defense_mode(to_string(m)), m);
  }
  EXPECT_FALSE(parse_objective("cheapest"));
  EXPECT_EQ(to_string(GameOutcome::kTurnLimit), "turn_limit");
}
