#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "adgraph/model.hpp"

namespace adgraph {

/// Layered base graph: objects as nodes, relationships split into
/// intra-layer and vertical (cross-layer) edges.
class HierarchicalGraph {
 public:
  struct Node {
    std::string id;
    int layer = 0;
    std::string category;
    std::string label;
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<RelationshipEdge>& intra_edges() const { return intra_; }
  const std::vector<RelationshipEdge>& vertical_edges() const {
    return vertical_;
  }

  bool contains(std::string_view id) const;
  const Node& node(std::string_view id) const;

  /// True when a relationship leads from `from` to `to`; undirected edges
  /// answer both ways.
  bool linked(std::string_view from, std::string_view to) const;

  /// Distinct objects reachable over one relationship, sorted by id.
  std::vector<std::string> successors(std::string_view id) const;

 private:
  friend HierarchicalGraph build_base_graph(const ScenarioDoc& doc);

  std::vector<Node> nodes_;  // sorted by (layer, id)
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<RelationshipEdge> intra_;
  std::vector<RelationshipEdge> vertical_;
  std::map<std::string, std::vector<std::string>, std::less<>> succ_;
};

/// One a-result of one attack record, drawn from the attacked object to the
/// affected object.
struct AttackEdge {
  std::string edge_id;  // attack_id + "#" + a-result index
  std::string attack_id;
  std::string from;
  std::string to;
  std::string permission;
  double cost = 0.0;
  double severity = 0.0;
  double detect_prob = 0.0;

  Grant grant() const { return {to, permission}; }
  bool operator==(const AttackEdge&) const = default;
};

class AttackGraph {
 public:
  /// All edges, sorted by edge_id.
  const std::vector<AttackEdge>& edges() const { return edges_; }

  const AttackEdge* find(std::string_view edge_id) const;
  std::size_t index_of(std::string_view edge_id) const;  // throws kUnknownEdge

  /// Edge indices owned by `attack_id`, in edge_id order.
  const std::vector<std::size_t>& edges_of_attack(
      std::string_view attack_id) const;

  /// Edge indices leaving `object`, in edge_id order.
  const std::vector<std::size_t>& edges_from(std::string_view object) const;

  bool has_object(std::string_view object) const;

 private:
  friend AttackGraph build_attack_graph(const ScenarioDoc& doc,
                                        const HierarchicalGraph& base);

  std::vector<AttackEdge> edges_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_attack_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_from_;
};

HierarchicalGraph build_base_graph(const ScenarioDoc& doc);
AttackGraph build_attack_graph(const ScenarioDoc& doc,
                               const HierarchicalGraph& base);

/// Edges leaving `object`, sorted by edge_id. Throws kUnknownObject.
std::vector<AttackEdge> neighbors(const AttackGraph& graph,
                                  std::string_view object);

}  // namespace adgraph
