#include "adgraph/defense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "adgraph/error.hpp"

namespace adgraph {

namespace {

constexpr double kEps = 1e-9;

bool within_budget(double cost, double budget) {
  return cost <= budget + kEps * std::max(1.0, std::abs(budget));
}

// Defenses in id order, with the attacks each one neutralizes.
struct DefenseTable {
  std::vector<const DefenseRecord*> defenses;

  explicit DefenseTable(const ScenarioDoc& doc) {
    for (const auto& d : doc.defenses) defenses.push_back(&d);
    std::sort(defenses.begin(), defenses.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });
  }

  bool breaks(std::size_t d, const AttackChain& chain) const {
    const auto& names = defenses[d]->d_results;
    return std::any_of(chain.attacks.begin(), chain.attacks.end(),
                       [&](const std::string& a) {
                         return std::find(names.begin(), names.end(), a) !=
                                names.end();
                       });
  }

  // cover[c] lists the defenses breaking chains[c], ascending.
  std::vector<std::vector<std::size_t>> cover(
      const std::vector<AttackChain>& chains) const {
    std::vector<std::vector<std::size_t>> out(chains.size());
    for (std::size_t c = 0; c < chains.size(); ++c) {
      for (std::size_t d = 0; d < defenses.size(); ++d) {
        if (breaks(d, chains[c])) out[c].push_back(d);
      }
    }
    return out;
  }
};

// Chains as produced by hand may lack attack ids; fill them from the graph.
AttackChain with_attacks(const AttackGraph& graph, AttackChain chain) {
  if (chain.attacks.size() == chain.edges.size()) return chain;
  chain.attacks.clear();
  for (const auto& id : chain.edges) {
    chain.attacks.push_back(graph.edges()[graph.index_of(id)].attack_id);
  }
  return chain;
}

std::vector<std::size_t> relevant(const std::vector<std::vector<std::size_t>>& cover) {
  std::vector<std::size_t> out;
  for (const auto& list : cover) out.insert(out.end(), list.begin(), list.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> bits_of(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Sets chosen/total_cost/neutralized_edges and the survivors among `chains`.
void finish(const ScenarioDoc& doc, const AttackGraph& graph,
            const DefenseOptions& options, std::vector<std::string> chosen,
            const std::vector<AttackChain>& chains, DefensePlan& plan) {
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  plan.total_cost = 0.0;
  for (const auto& id : chosen) plan.total_cost += doc.find_defense(id)->cost;
  auto attacks = neutralized_attacks(doc, chosen);
  plan.neutralized_edges.clear();
  for (const auto& a : attacks) {
    for (std::size_t e : graph.edges_of_attack(a)) {
      plan.neutralized_edges.push_back(graph.edges()[e].edge_id);
    }
  }
  std::sort(plan.neutralized_edges.begin(), plan.neutralized_edges.end());
  plan.chosen = std::move(chosen);
  plan.surviving_count = 0;
  plan.surviving_sample.clear();
  for (const auto& c : chains) {
    if (is_broken(c, attacks)) continue;
    ++plan.surviving_count;
    if (plan.surviving_sample.size() < options.sample_size) {
      plan.surviving_sample.push_back(c);
    }
  }
}

// True when adding `a` improves coverage per unit cost more than `b`.
bool better_ratio(double gain_a, double cost_a, double gain_b, double cost_b) {
  if (cost_a == 0.0 && cost_b == 0.0) return gain_a > gain_b;
  return gain_a * cost_b > gain_b * cost_a;
}

// Exact minimum-cost hitting set by branch and bound. Branching on one unhit
// chain's defenses, each branch excludes the defenses tried before it, so
// every candidate set is visited at most once.
class HittingSetSearch {
 public:
  HittingSetSearch(std::vector<std::uint32_t> chain_masks,
                   std::vector<double> costs)
      : masks_(std::move(chain_masks)), costs_(std::move(costs)) {}

  std::uint32_t solve() {
    recurse(0, 0.0, 0);
    return best_mask_;
  }

 private:
  double canonical_cost(std::uint32_t mask) const {
    double total = 0.0;
    for (std::size_t d : bits_of(mask)) total += costs_[d];
    return total;
  }

  void offer(std::uint32_t mask) {
    double cost = canonical_cost(mask);
    if (!found_ || cost < best_cost_ - kEps ||
        (std::abs(cost - best_cost_) <= kEps && bits_of(mask) < bits_of(best_mask_))) {
      found_ = true;
      best_cost_ = cost;
      best_mask_ = mask;
    }
  }

  void recurse(std::uint32_t chosen, double cost, std::uint32_t excluded) {
    double bound = cost;
    std::size_t branch = masks_.size();
    int fewest = std::numeric_limits<int>::max();
    for (std::size_t c = 0; c < masks_.size(); ++c) {
      if (masks_[c] & chosen) continue;
      std::uint32_t open = masks_[c] & ~excluded;
      if (open == 0) return;
      double cheapest = std::numeric_limits<double>::infinity();
      for (std::size_t d : bits_of(open)) cheapest = std::min(cheapest, costs_[d]);
      bound = std::max(bound, cost + cheapest);
      int n = std::popcount(open);
      if (n < fewest) {
        fewest = n;
        branch = c;
      }
    }
    if (found_ && bound > best_cost_ + kEps) return;
    if (branch == masks_.size()) {
      offer(chosen);
      return;
    }
    std::uint32_t tried = 0;
    for (std::size_t d : bits_of(masks_[branch] & ~excluded)) {
      std::uint32_t bit = std::uint32_t{1} << d;
      recurse(chosen | bit, cost + costs_[d], excluded | tried);
      tried |= bit;
    }
  }

  std::vector<std::uint32_t> masks_;
  std::vector<double> costs_;
  bool found_ = false;
  double best_cost_ = 0.0;
  std::uint32_t best_mask_ = 0;
};

}  // namespace

std::vector<DefenseRecord> applicable_defenses(const ScenarioDoc& doc,
                                               const std::string& attack_id) {
  if (!doc.find_attack(attack_id)) {
    throw Error(ErrorCode::kUnknownAttack, "unknown attack '" + attack_id + "'");
  }
  std::vector<DefenseRecord> out;
  for (const auto& d : doc.defenses) {
    if (std::find(d.d_results.begin(), d.d_results.end(), attack_id) !=
        d.d_results.end()) {
      out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const DefenseRecord& a, const DefenseRecord& b) {
              return std::tie(a.cost, a.id) < std::tie(b.cost, b.id);
            });
  return out;
}

std::set<std::string> neutralized_attacks(
    const ScenarioDoc& doc, const std::vector<std::string>& defense_ids) {
  std::set<std::string> out;
  for (const auto& id : defense_ids) {
    const auto* d = doc.find_defense(id);
    if (!d) throw Error(ErrorCode::kUnknownDefense, "unknown defense '" + id + "'");
    out.insert(d->d_results.begin(), d->d_results.end());
  }
  return out;
}

bool is_broken(const AttackChain& chain,
               const std::set<std::string>& neutralized) {
  return std::any_of(chain.attacks.begin(), chain.attacks.end(),
                     [&](const std::string& a) { return neutralized.contains(a); });
}

DefensePlan plan_coverage(const ScenarioDoc& doc, const AttackGraph& graph,
                          const AttackChain& chain_in,
                          const ChainOptions& chain_options,
                          const DefenseOptions& options) {
  AttackChain chain = with_attacks(graph, chain_in);
  auto check = ChainEngine(doc, graph, chain_options).check(chain.edges);
  if (!check.valid) {
    throw Error(ErrorCode::kInvalidChain,
                "chain fails at index " + std::to_string(*check.failed_index) +
                    ": " + check.reason);
  }
  DefensePlan plan;
  plan.mode = DefenseMode::kCoverage;
  std::vector<std::string> attacks = chain.attacks;
  std::sort(attacks.begin(), attacks.end());
  attacks.erase(std::unique(attacks.begin(), attacks.end()), attacks.end());
  std::vector<std::string> chosen;
  for (const auto& a : attacks) {
    auto defs = applicable_defenses(doc, a);
    if (defs.empty()) {
      plan.uncovered_attacks.push_back(a);
    } else {
      chosen.push_back(defs.front().id);
    }
  }
  plan.complete = plan.uncovered_attacks.empty();
  finish(doc, graph, options, std::move(chosen), {chain}, plan);
  return plan;
}

DefensePlan plan_budgeted(const ScenarioDoc& doc, const AttackGraph& graph,
                          const std::vector<AttackChain>& chains_in,
                          double budget, const DefenseOptions& options) {
  if (!(budget >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "budget must be non-negative");
  }
  std::vector<AttackChain> chains;
  for (const auto& c : chains_in) chains.push_back(with_attacks(graph, c));

  DefenseTable table(doc);
  auto cover = table.cover(chains);
  std::vector<double> value(chains.size(), 1.0);
  if (options.objective == BudgetObjective::kThreat) {
    for (std::size_t c = 0; c < chains.size(); ++c) value[c] = chains[c].total_threat;
  }
  const std::vector<std::size_t> cand = relevant(cover);
  auto cost_of = [&](std::size_t d) { return table.defenses[d]->cost; };

  DefensePlan plan;
  plan.mode = DefenseMode::kBudget;
  plan.budget = budget;
  std::vector<std::size_t> pick;

  if (cand.size() <= options.exact_max_defenses && cand.size() < 32) {
    const std::size_t n = cand.size();
    std::vector<std::uint32_t> masks(chains.size(), 0);
    for (std::size_t c = 0; c < chains.size(); ++c) {
      for (std::size_t k = 0; k < n; ++k) {
        if (std::binary_search(cover[c].begin(), cover[c].end(), cand[k])) {
          masks[c] |= std::uint32_t{1} << k;
        }
      }
    }
    const std::uint32_t count = std::uint32_t{1} << n;
    std::vector<double> subset_cost(count, 0.0);
    std::uint32_t best = 0;
    double best_value = 0.0;
    double best_cost = 0.0;
    for (std::uint32_t s = 1; s < count; ++s) {
      subset_cost[s] = subset_cost[s & (s - 1)] + cost_of(cand[std::countr_zero(s)]);
      const double cost = subset_cost[s];
      if (!within_budget(cost, budget)) continue;
      double v = 0.0;
      for (std::size_t c = 0; c < chains.size(); ++c) {
        if (masks[c] & s) v += value[c];
      }
      bool take = v > best_value + kEps;
      if (!take && std::abs(v - best_value) <= kEps) {
        take = cost < best_cost - kEps ||
               (std::abs(cost - best_cost) <= kEps && bits_of(s) < bits_of(best));
      }
      // The empty set (s = 0) is the starting incumbent.
      if (take && v > kEps) {
        best = s;
        best_value = v;
        best_cost = cost;
      }
    }
    for (std::size_t k : bits_of(best)) pick.push_back(cand[k]);
    plan.optimal = true;
  } else {
    std::vector<bool> broken(chains.size(), false);
    std::vector<bool> taken(table.defenses.size(), false);
    double spent = 0.0;
    for (;;) {
      std::size_t best = table.defenses.size();
      double best_gain = 0.0;
      for (std::size_t d : cand) {
        if (taken[d] || !within_budget(spent + cost_of(d), budget)) continue;
        double gain = 0.0;
        for (std::size_t c = 0; c < chains.size(); ++c) {
          if (!broken[c] && table.breaks(d, chains[c])) gain += value[c];
        }
        if (gain <= kEps) continue;
        if (best == table.defenses.size() ||
            better_ratio(gain, cost_of(d), best_gain, cost_of(best))) {
          best = d;
          best_gain = gain;
        }
      }
      if (best == table.defenses.size()) break;
      taken[best] = true;
      spent += cost_of(best);
      pick.push_back(best);
      for (std::size_t c = 0; c < chains.size(); ++c) {
        if (table.breaks(best, chains[c])) broken[c] = true;
      }
    }
    plan.optimal = false;
  }

  std::vector<std::string> chosen;
  for (std::size_t d : pick) chosen.push_back(table.defenses[d]->id);
  finish(doc, graph, options, std::move(chosen), chains, plan);
  auto attacks = neutralized_attacks(doc, plan.chosen);
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (!is_broken(chains[c], attacks)) continue;
    ++plan.broken_count;
    plan.broken_value += value[c];
  }
  return plan;
}

std::vector<AttackChain> surviving_chains(
    const ScenarioDoc& doc, const AttackGraph& graph,
    const std::vector<std::string>& defense_ids, const ChainLimits& limits,
    const ChainOptions& chain_options,
    std::optional<std::vector<Grant>> entry_grants) {
  EngineScope scope;
  scope.entry_grants = std::move(entry_grants);
  scope.disabled_attacks = neutralized_attacks(doc, defense_ids);
  return ChainEngine(doc, graph, chain_options, std::move(scope)).enumerate(limits);
}

DefensePlan plan_cut(const ScenarioDoc& doc, const AttackGraph& graph,
                     const std::vector<Grant>& entry_grants,
                     const std::vector<std::string>& targets,
                     const ChainLimits& limits_in,
                     const ChainOptions& chain_options,
                     const DefenseOptions& options) {
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptyTargets, "a cut needs at least one target");
  }
  ChainLimits limits{limits_in.max_len, targets};
  EngineScope scope;
  scope.entry_grants = entry_grants;
  auto chains = ChainEngine(doc, graph, chain_options, scope).enumerate(limits);

  DefenseTable table(doc);
  auto cover = table.cover(chains);
  DefensePlan plan;
  plan.mode = DefenseMode::kCut;

  std::vector<AttackChain> unbreakable;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (cover[c].empty()) unbreakable.push_back(chains[c]);
  }
  if (!unbreakable.empty()) {
    plan.feasible = false;
    plan.optimal = false;
    finish(doc, graph, options, {}, unbreakable, plan);
    return plan;
  }

  const std::vector<std::size_t> cand = relevant(cover);
  auto cost_of = [&](std::size_t d) { return table.defenses[d]->cost; };
  std::vector<std::size_t> pick;
  if (cand.size() <= options.exact_max_defenses && cand.size() < 32 &&
      chains.size() <= options.exact_max_chains) {
    std::vector<std::uint32_t> masks(chains.size(), 0);
    std::vector<double> costs;
    for (std::size_t k = 0; k < cand.size(); ++k) costs.push_back(cost_of(cand[k]));
    for (std::size_t c = 0; c < chains.size(); ++c) {
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (std::binary_search(cover[c].begin(), cover[c].end(), cand[k])) {
          masks[c] |= std::uint32_t{1} << k;
        }
      }
    }
    for (std::size_t k : bits_of(HittingSetSearch(masks, costs).solve())) {
      pick.push_back(cand[k]);
    }
    plan.optimal = true;
  } else {
    std::vector<bool> hit(chains.size(), false);
    std::size_t left = chains.size();
    while (left > 0) {
      std::size_t best = table.defenses.size();
      double best_gain = 0.0;
      for (std::size_t d : cand) {
        if (std::find(pick.begin(), pick.end(), d) != pick.end()) continue;
        double gain = 0.0;
        for (std::size_t c = 0; c < chains.size(); ++c) {
          if (!hit[c] && table.breaks(d, chains[c])) gain += 1.0;
        }
        if (gain == 0.0) continue;
        if (best == table.defenses.size() ||
            better_ratio(gain, cost_of(d), best_gain, cost_of(best))) {
          best = d;
          best_gain = gain;
        }
      }
      pick.push_back(best);
      for (std::size_t c = 0; c < chains.size(); ++c) {
        if (!hit[c] && table.breaks(best, chains[c])) {
          hit[c] = true;
          --left;
        }
      }
    }
    plan.optimal = false;
  }

  std::vector<std::string> chosen;
  for (std::size_t d : pick) chosen.push_back(table.defenses[d]->id);

  // Re-enumerate with the plan applied; escalate until nothing survives.
  for (;;) {
    auto survivors =
        surviving_chains(doc, graph, chosen, limits, chain_options, entry_grants);
    if (survivors.empty()) break;
    plan.optimal = false;
    std::size_t best = table.defenses.size();
    double best_gain = 0.0;
    for (std::size_t d = 0; d < table.defenses.size(); ++d) {
      if (std::find(chosen.begin(), chosen.end(), table.defenses[d]->id) !=
          chosen.end()) {
        continue;
      }
      double gain = 0.0;
      for (const auto& c : survivors) gain += table.breaks(d, c) ? 1.0 : 0.0;
      if (gain == 0.0) continue;
      if (best == table.defenses.size() ||
          better_ratio(gain, cost_of(d), best_gain, cost_of(best))) {
        best = d;
        best_gain = gain;
      }
    }
    if (best == table.defenses.size()) {
      plan.feasible = false;
      finish(doc, graph, options, chosen, survivors, plan);
      return plan;
    }
    chosen.push_back(table.defenses[best]->id);
  }
  finish(doc, graph, options, std::move(chosen), chains, plan);
  return plan;
}

std::vector<RiskRow> risk_assess(const ScenarioDoc& doc,
                                 const AttackGraph& graph, int max_len,
                                 const ChainOptions& options) {
  std::map<std::string, RiskRow> rows;
  for (const auto& o : doc.objects) rows[o.id].object = o.id;
  if (!doc.entry_grants.empty()) {
    auto chains = ChainEngine(doc, graph, options).enumerate({max_len, {}});
    for (const auto& c : chains) {
      const auto& last = graph.edges()[graph.index_of(c.edges.back())];
      RiskRow& row = rows[last.to];
      ++row.chain_count;
      row.max_chain_threat = std::max(row.max_chain_threat, c.total_threat);
      row.min_chain_cost = row.min_chain_cost
                               ? std::min(*row.min_chain_cost, c.total_cost)
                               : c.total_cost;
    }
  }
  std::vector<RiskRow> out;
  for (auto& [id, row] : rows) out.push_back(std::move(row));
  std::stable_sort(out.begin(), out.end(), [](const RiskRow& a, const RiskRow& b) {
    if (a.max_chain_threat != b.max_chain_threat) {
      return a.max_chain_threat > b.max_chain_threat;
    }
    return a.object < b.object;
  });
  return out;
}

}  // namespace adgraph
