#include "adgraph/graph.hpp"

#include <algorithm>

#include "adgraph/error.hpp"
#include "adgraph/scenario.hpp"

namespace adgraph {

bool HierarchicalGraph::contains(std::string_view id) const {
  return index_.find(id) != index_.end();
}

const HierarchicalGraph::Node& HierarchicalGraph::node(
    std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownObject,
                "unknown object '" + std::string(id) + "'");
  }
  return nodes_[it->second];
}

bool HierarchicalGraph::linked(std::string_view from,
                               std::string_view to) const {
  auto it = succ_.find(from);
  if (it == succ_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), to);
}

std::vector<std::string> HierarchicalGraph::successors(
    std::string_view id) const {
  node(id);
  auto it = succ_.find(id);
  return it == succ_.end() ? std::vector<std::string>{} : it->second;
}

HierarchicalGraph build_base_graph(const ScenarioDoc& doc) {
  require_valid(doc);
  HierarchicalGraph g;
  for (const auto& o : doc.objects) {
    g.nodes_.push_back({o.id, *layer_index(o.layer), o.category, o.label});
  }
  std::sort(g.nodes_.begin(), g.nodes_.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.layer, a.id) < std::tie(b.layer, b.id);
            });
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
    g.index_.emplace(g.nodes_[i].id, i);
  }
  for (const auto& r : doc.relationships) {
    bool same_layer = g.node(r.from).layer == g.node(r.to).layer;
    (same_layer ? g.intra_ : g.vertical_).push_back(r);
    g.succ_[r.from].push_back(r.to);
    if (!r.directed) g.succ_[r.to].push_back(r.from);
  }
  auto edge_order = [](const RelationshipEdge& a, const RelationshipEdge& b) {
    return std::tie(a.from, a.to, a.kind, a.directed) <
           std::tie(b.from, b.to, b.kind, b.directed);
  };
  std::stable_sort(g.intra_.begin(), g.intra_.end(), edge_order);
  std::stable_sort(g.vertical_.begin(), g.vertical_.end(), edge_order);
  for (auto& [id, next] : g.succ_) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }
  return g;
}

const AttackEdge* AttackGraph::find(std::string_view edge_id) const {
  auto it = by_id_.find(edge_id);
  return it == by_id_.end() ? nullptr : &edges_[it->second];
}

std::size_t AttackGraph::index_of(std::string_view edge_id) const {
  auto it = by_id_.find(edge_id);
  if (it == by_id_.end()) {
    throw Error(ErrorCode::kUnknownEdge,
                "unknown edge '" + std::string(edge_id) + "'");
  }
  return it->second;
}

namespace {
const std::vector<std::size_t> kNoEdges;
}

const std::vector<std::size_t>& AttackGraph::edges_of_attack(
    std::string_view attack_id) const {
  auto it = by_attack_.find(attack_id);
  return it == by_attack_.end() ? kNoEdges : it->second;
}

const std::vector<std::size_t>& AttackGraph::edges_from(
    std::string_view object) const {
  auto it = by_from_.find(object);
  return it == by_from_.end() ? kNoEdges : it->second;
}

bool AttackGraph::has_object(std::string_view object) const {
  return by_from_.find(object) != by_from_.end();
}

AttackGraph build_attack_graph(const ScenarioDoc& doc,
                               const HierarchicalGraph& base) {
  require_valid(doc);
  AttackGraph g;
  for (const auto& a : doc.attacks) {
    for (std::size_t i = 0; i < a.a_results.size(); ++i) {
      const Grant& r = a.a_results[i];
      base.node(a.object);
      base.node(r.object);
      g.edges_.push_back({a.id + "#" + std::to_string(i), a.id, a.object,
                          r.object, r.permission, a.cost, a.severity,
                          a.detect_prob});
    }
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const AttackEdge& x, const AttackEdge& y) {
              return x.edge_id < y.edge_id;
            });
  // Every object gets an (possibly empty) entry so has_object() can tell
  // unknown objects from leaves.
  for (const auto& n : base.nodes()) g.by_from_.try_emplace(n.id);
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const auto& e = g.edges_[i];
    g.by_id_.emplace(e.edge_id, i);
    g.by_attack_[e.attack_id].push_back(i);
    g.by_from_[e.from].push_back(i);
  }
  return g;
}

std::vector<AttackEdge> neighbors(const AttackGraph& graph,
                                  std::string_view object) {
  if (!graph.has_object(object)) {
    throw Error(ErrorCode::kUnknownObject,
                "unknown object '" + std::string(object) + "'");
  }
  std::vector<AttackEdge> out;
  for (std::size_t i : graph.edges_from(object)) out.push_back(graph.edges()[i]);
  return out;
}

}  // namespace adgraph
