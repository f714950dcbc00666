#include "adgraph/chain.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "adgraph/error.hpp"

namespace adgraph {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

bool lex_less(const std::vector<std::size_t>& a,
              const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

struct ChainEngine::Impl {
  struct Attack {
    std::string id;
    std::vector<std::size_t> condition;  // grant indices, sorted, unique
    bool entry_only = false;
    std::vector<std::size_t> results;
    double cost = 0.0;
    double severity = 0.0;
    bool enabled = true;
  };
  struct Edge {
    std::string id;
    std::size_t attack = 0;
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t grant = 0;
  };

  ChainOptions options;
  std::vector<std::string> objects;
  std::map<std::string, std::size_t, std::less<>> object_index;
  std::vector<Grant> grants;  // sorted; bit order follows this order
  std::map<Grant, std::size_t> grant_index;
  std::vector<Attack> attacks;  // sorted by id
  std::vector<Edge> edges;      // AttackGraph order (edge_id order)
  std::vector<std::vector<std::size_t>> out;
  Bits entry;
  bool entry_empty = true;

  std::size_t object_of(std::string_view id, ErrorCode code) const {
    auto it = object_index.find(id);
    if (it == object_index.end()) {
      throw Error(code, "unknown object '" + std::string(id) + "'");
    }
    return it->second;
  }

  void require_entry() const {
    if (entry_empty) {
      throw Error(ErrorCode::kEmptyEntryGrants,
                  "chain analysis needs at least one entry grant");
    }
  }

  Walk start() const {
    Walk w;
    w.grants = entry;
    w.visited = make_bits(objects.size());
    w.used = make_bits(attacks.size());
    return w;
  }

  bool holds(const Walk& w, std::size_t grant) const {
    if (options.semantics == Semantics::kAccumulated) return test(w.grants, grant);
    if (test(entry, grant)) return true;
    return !w.path.empty() && edges[w.path.back()].grant == grant;
  }

  // Empty string when `e` may extend `w`; otherwise why not.
  std::string refusal(const Walk& w, std::size_t e) const {
    const Edge& edge = edges[e];
    const Attack& a = attacks[edge.attack];
    if (!a.enabled) return "attack " + a.id + " is neutralized";
    if (!w.path.empty()) {
      const Edge& prev = edges[w.path.back()];
      if (prev.to != edge.from) {
        return "not adjacent: " + prev.id + " ends at " + objects[prev.to] +
               " but " + edge.id + " starts at " + objects[edge.from];
      }
      if (a.entry_only) return "attack " + a.id + " is entry-only";
    }
    if (test(w.used, edge.attack)) return "attack " + a.id + " already fired";
    if (test(w.visited, edge.to)) {
      return "object " + objects[edge.to] + " already reached";
    }
    for (std::size_t g : a.condition) {
      if (!holds(w, g)) return "unsatisfied " + to_string(grants[g]);
    }
    return {};
  }

  bool can_take(const Walk& w, std::size_t e) const {
    const Edge& edge = edges[e];
    const Attack& a = attacks[edge.attack];
    if (!a.enabled || test(w.used, edge.attack) || test(w.visited, edge.to)) {
      return false;
    }
    if (!w.path.empty()) {
      if (edges[w.path.back()].to != edge.from || a.entry_only) return false;
    }
    return std::all_of(a.condition.begin(), a.condition.end(),
                       [&](std::size_t g) { return holds(w, g); });
  }

  std::vector<std::size_t> extensions(const Walk& w) const {
    std::vector<std::size_t> result;
    auto consider = [&](std::size_t e) {
      if (can_take(w, e)) result.push_back(e);
    };
    if (w.path.empty()) {
      for (std::size_t e = 0; e < edges.size(); ++e) consider(e);
    } else {
      for (std::size_t e : out[edges[w.path.back()].to]) consider(e);
    }
    return result;
  }

  Walk advance(const Walk& w, std::size_t e) const {
    Walk next = w;
    const Edge& edge = edges[e];
    next.path.push_back(e);
    set_bit(next.used, edge.attack);
    set_bit(next.visited, edge.to);
    for (std::size_t g : attacks[edge.attack].results) set_bit(next.grants, g);
    return next;
  }

  std::vector<Grant> grant_list(const Bits& bits) const {
    std::vector<Grant> result;
    for (std::size_t g = 0; g < grants.size(); ++g) {
      if (test(bits, g)) result.push_back(grants[g]);
    }
    return result;
  }

  // Totals over the attacks fired by path[from..]. Summation runs in attack
  // id order so equal attack sets give bit-identical totals.
  std::pair<double, double> totals(const std::vector<std::size_t>& path,
                                   std::size_t from = 0) const {
    std::vector<std::size_t> fired;
    for (std::size_t i = from; i < path.size(); ++i) {
      fired.push_back(edges[path[i]].attack);
    }
    std::sort(fired.begin(), fired.end());
    double cost = 0.0;
    double threat = 0.0;
    for (std::size_t a : fired) {
      cost += attacks[a].cost;
      threat = options.threat == ThreatAggregation::kSum
                   ? threat + attacks[a].severity
                   : std::max(threat, attacks[a].severity);
    }
    return {cost, threat};
  }

  AttackChain materialize(const Walk& w, std::size_t from = 0) const {
    AttackChain c;
    for (std::size_t i = from; i < w.path.size(); ++i) {
      const Edge& edge = edges[w.path[i]];
      c.edges.push_back(edge.id);
      c.attacks.push_back(attacks[edge.attack].id);
    }
    std::tie(c.total_cost, c.total_threat) = totals(w.path, from);
    c.final_grants = grant_list(w.grants);
    return c;
  }

  // Empty bits mean "any object".
  Bits target_mask(const std::vector<std::string>& targets) const {
    Bits mask = make_bits(objects.size());
    if (targets.empty()) {
      for (std::size_t i = 0; i < objects.size(); ++i) set_bit(mask, i);
    }
    for (const auto& t : targets) {
      set_bit(mask, object_of(t, ErrorCode::kUnknownTarget));
    }
    return mask;
  }

  Bits winning_grants(const std::vector<std::string>& targets,
                      const std::vector<std::string>& permissions) const {
    Bits mask = make_bits(grants.size());
    for (std::size_t g = 0; g < grants.size(); ++g) {
      bool on_target = std::find(targets.begin(), targets.end(),
                                 grants[g].object) != targets.end();
      bool perm_ok = permissions.empty() ||
                     std::find(permissions.begin(), permissions.end(),
                               grants[g].permission) != permissions.end();
      if (on_target && perm_ok) set_bit(mask, g);
    }
    return mask;
  }

  static bool intersects(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] & b[i]) return true;
    }
    return false;
  }

  bool ends_at(const Walk& w, const Bits& targets) const {
    return !w.path.empty() && test(targets, edges[w.path.back()].to);
  }

  // Depth-first over all extensions of `w` with at most `budget` more edges.
  template <typename Visit>
  void walk_all(const Walk& w, int budget, Visit& visit) const {
    if (budget <= 0) return;
    for (std::size_t e : extensions(w)) {
      Walk next = advance(w, e);
      visit(next);
      walk_all(next, budget - 1, visit);
    }
  }

  bool reach(const Walk& w, const Bits& winning, int steps) const {
    if (intersects(w.grants, winning)) return true;
    if (steps <= 0) return false;
    for (std::size_t e : extensions(w)) {
      if (reach(advance(w, e), winning, steps - 1)) return true;
    }
    return false;
  }
};

ChainEngine::ChainEngine(const ScenarioDoc& doc, const AttackGraph& graph,
                         ChainOptions options, EngineScope scope)
    : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.options = options;
  for (const auto& o : doc.objects) {
    m.object_index.emplace(o.id, m.objects.size());
    m.objects.push_back(o.id);
  }
  const std::vector<Grant>& entry =
      scope.entry_grants ? *scope.entry_grants : doc.entry_grants;

  std::set<Grant> all(entry.begin(), entry.end());
  for (const auto& a : doc.attacks) {
    all.insert(a.condition.begin(), a.condition.end());
    all.insert(a.a_results.begin(), a.a_results.end());
  }
  m.grants.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < m.grants.size(); ++i) m.grant_index[m.grants[i]] = i;

  std::vector<const AttackRecord*> sorted;
  for (const auto& a : doc.attacks) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* x, const auto* y) { return x->id < y->id; });
  std::map<std::string, std::size_t, std::less<>> attack_index;
  for (const auto* a : sorted) {
    Impl::Attack c;
    c.id = a->id;
    for (const auto& g : a->condition) c.condition.push_back(m.grant_index[g]);
    std::sort(c.condition.begin(), c.condition.end());
    c.condition.erase(std::unique(c.condition.begin(), c.condition.end()),
                      c.condition.end());
    for (const auto& g : a->a_results) c.results.push_back(m.grant_index[g]);
    c.entry_only = a->entry_only;
    c.cost = a->cost;
    c.severity = a->severity;
    c.enabled = !scope.disabled_attacks.contains(a->id);
    attack_index.emplace(c.id, m.attacks.size());
    m.attacks.push_back(std::move(c));
  }

  m.out.resize(m.objects.size());
  for (const auto& e : graph.edges()) {
    auto a = attack_index.find(e.attack_id);
    if (a == attack_index.end()) {
      throw Error(ErrorCode::kUnknownAttack,
                  "edge " + e.edge_id + " names unknown attack " + e.attack_id);
    }
    Impl::Edge c{e.edge_id, a->second,
                 m.object_of(e.from, ErrorCode::kUnknownObject),
                 m.object_of(e.to, ErrorCode::kUnknownObject),
                 m.grant_index.at(e.grant())};
    m.out[c.from].push_back(m.edges.size());
    m.edges.push_back(std::move(c));
  }

  m.entry = make_bits(m.grants.size());
  for (const auto& g : entry) set_bit(m.entry, m.grant_index[g]);
  m.entry_empty = entry.empty();
}

ChainEngine::~ChainEngine() = default;
ChainEngine::ChainEngine(ChainEngine&&) noexcept = default;
ChainEngine& ChainEngine::operator=(ChainEngine&&) noexcept = default;

ChainCheck ChainEngine::check(std::span<const std::string> edge_ids) const {
  const Impl& m = *impl_;
  std::vector<std::size_t> path;
  for (const auto& id : edge_ids) {
    auto it = std::find_if(m.edges.begin(), m.edges.end(),
                           [&](const Impl::Edge& e) { return e.id == id; });
    if (it == m.edges.end()) {
      throw Error(ErrorCode::kUnknownEdge, "unknown edge '" + id + "'");
    }
    path.push_back(static_cast<std::size_t>(it - m.edges.begin()));
  }
  m.require_entry();

  ChainCheck result;
  Walk w = m.start();
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::string why = m.refusal(w, path[i]);
    if (!why.empty()) {
      result.failed_index = i;
      result.reason = std::move(why);
      return result;
    }
    w = m.advance(w, path[i]);
    AttackerState state;
    state.grants = m.grant_list(w.grants);
    for (std::size_t e : w.path) state.fired.push_back(m.attacks[m.edges[e].attack].id);
    result.trace.push_back(std::move(state));
  }
  result.valid = true;
  return result;
}

std::vector<AttackChain> ChainEngine::enumerate(const ChainLimits& limits) const {
  const Impl& m = *impl_;
  m.require_entry();
  Bits targets = m.target_mask(limits.targets);
  std::vector<Walk> found;
  auto visit = [&](const Walk& w) {
    if (m.ends_at(w, targets)) found.push_back(w);
  };
  m.walk_all(m.start(), limits.max_len, visit);
  std::sort(found.begin(), found.end(), [](const Walk& a, const Walk& b) {
    return lex_less(a.path, b.path);
  });
  std::vector<AttackChain> chains;
  chains.reserve(found.size());
  for (const auto& w : found) chains.push_back(m.materialize(w));
  return chains;
}

std::optional<AttackChain> ChainEngine::search(
    const ChainObjective& objective) const {
  const Impl& m = *impl_;
  m.require_entry();
  if (objective.limits.max_len < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_len must be at least 1");
  }
  Bits targets = m.target_mask(objective.limits.targets);
  const int max_len = objective.limits.max_len;

  if (objective.kind == ObjectiveKind::kMaxThreat) {
    std::optional<Walk> best;
    double best_threat = 0.0;
    auto visit = [&](const Walk& w) {
      if (!m.ends_at(w, targets)) return;
      double threat = m.totals(w.path).second;
      if (!best || threat > best_threat ||
          (threat == best_threat && lex_less(w.path, best->path))) {
        best = w;
        best_threat = threat;
      }
    };
    m.walk_all(m.start(), max_len, visit);
    if (!best) return std::nullopt;
    return m.materialize(*best);
  }

  // Uniform-cost search. A node's key (cost, length, edge ids) strictly
  // grows along every extension because costs are non-negative, so the
  // first target-reaching node popped is the optimum under the tie order.
  struct Node {
    double cost;
    Walk walk;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    return lex_less(b.walk.path, a.walk.path);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  // Walks agreeing on last edge, fired attacks and reached objects have the
  // same futures; only the first one popped matters.
  std::set<std::tuple<std::size_t, Bits, Bits>> closed;
  open.push({0.0, m.start()});
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    const Walk& w = node.walk;
    if (m.ends_at(w, targets)) return m.materialize(w);
    if (!w.path.empty()) {
      if (!closed.emplace(w.path.back(), w.used, w.visited).second) continue;
    }
    if (static_cast<int>(w.path.size()) >= max_len) continue;
    for (std::size_t e : m.extensions(w)) {
      Walk next = m.advance(w, e);
      double cost = m.totals(next.path).first;
      open.push({cost, std::move(next)});
    }
  }
  return std::nullopt;
}

ChainEngine::Walk ChainEngine::start() const { return impl_->start(); }

std::vector<std::size_t> ChainEngine::extensions(const Walk& walk) const {
  return impl_->extensions(walk);
}

ChainEngine::Walk ChainEngine::advance(const Walk& walk, std::size_t edge) const {
  if (edge >= impl_->edges.size() || !impl_->can_take(walk, edge)) {
    throw Error(ErrorCode::kInvalidChain, "edge cannot extend this walk");
  }
  return impl_->advance(walk, edge);
}

std::vector<Grant> ChainEngine::grants(const Walk& walk) const {
  return impl_->grant_list(walk.grants);
}

std::size_t ChainEngine::length(const Walk& walk) const {
  return walk.path.size();
}

bool ChainEngine::compromised(const Walk& walk,
                              const std::vector<std::string>& targets,
                              const std::vector<std::string>& permissions) const {
  return Impl::intersects(walk.grants,
                          impl_->winning_grants(targets, permissions));
}

bool ChainEngine::can_compromise(const Walk& walk,
                                 const std::vector<std::string>& targets,
                                 int steps,
                                 const std::vector<std::string>& permissions) const {
  return impl_->reach(walk, impl_->winning_grants(targets, permissions), steps);
}

std::vector<AttackChain> ChainEngine::continuations(
    const Walk& walk, const ChainLimits& limits) const {
  const Impl& m = *impl_;
  Bits targets = m.target_mask(limits.targets);
  const std::size_t base = walk.path.size();
  std::vector<Walk> found;
  auto visit = [&](const Walk& w) {
    if (m.ends_at(w, targets)) found.push_back(w);
  };
  m.walk_all(walk, limits.max_len, visit);
  std::sort(found.begin(), found.end(), [](const Walk& a, const Walk& b) {
    return lex_less(a.path, b.path);
  });
  std::vector<AttackChain> chains;
  for (const auto& w : found) chains.push_back(m.materialize(w, base));
  return chains;
}

std::vector<std::string> scenario_targets(const ScenarioDoc& doc) {
  return doc.targets;
}

ChainCheck is_valid_chain(const ScenarioDoc& doc, const AttackGraph& graph,
                          std::span<const std::string> edge_ids,
                          const ChainOptions& options) {
  return ChainEngine(doc, graph, options).check(edge_ids);
}

std::vector<AttackChain> enumerate_chains(const ScenarioDoc& doc,
                                          const AttackGraph& graph,
                                          const ChainLimits& limits,
                                          const ChainOptions& options) {
  return ChainEngine(doc, graph, options).enumerate(limits);
}

std::optional<AttackChain> search_chain(const ScenarioDoc& doc,
                                        const AttackGraph& graph,
                                        const ChainObjective& objective,
                                        const ChainOptions& options) {
  return ChainEngine(doc, graph, options).search(objective);
}

}  // namespace adgraph
