#include <algorithm>
#include <set>

#include "adgraph/chain.hpp"
#include "adgraph/error.hpp"

namespace adgraph {

namespace {

struct PathSearch {
  const HierarchicalGraph& base;
  const std::string& goal;
  int max_len;
  std::vector<std::vector<std::string>> paths;
  std::vector<std::string> current;

  void run(const std::string& node) {
    current.push_back(node);
    if (node == goal && current.size() > 1) {
      paths.push_back(current);
    } else if (static_cast<int>(current.size()) <= max_len) {
      for (const auto& next : base.successors(node)) {
        if (std::find(current.begin(), current.end(), next) == current.end()) {
          run(next);
        }
      }
    }
    current.pop_back();
  }
};

// Permissions the attacks crossing hop (v, w) need on v.
std::vector<std::set<std::string>> needs_on(const ScenarioDoc& doc,
                                            const AttackGraph& graph,
                                            const std::string& v,
                                            const std::string& w) {
  std::vector<std::set<std::string>> needs;
  std::set<std::string> seen;
  for (std::size_t i : graph.edges_from(v)) {
    const AttackEdge& e = graph.edges()[i];
    if (e.to != w || !seen.insert(e.attack_id).second) continue;
    std::set<std::string> perms;
    for (const auto& g : doc.find_attack(e.attack_id)->condition) {
      if (g.object == v) perms.insert(g.permission);
    }
    needs.push_back(std::move(perms));
  }
  return needs;
}

}  // namespace

std::vector<PotentialChain> generate_potential_chains(
    const ScenarioDoc& doc, const HierarchicalGraph& base,
    const AttackGraph& graph, const std::string& from, const std::string& to,
    int max_len) {
  base.node(from);
  base.node(to);

  auto covered = [&](const std::string& u, const std::string& v) {
    const auto& out = graph.edges_from(u);
    return std::any_of(out.begin(), out.end(), [&](std::size_t i) {
      return graph.edges()[i].to == v;
    });
  };

  PathSearch search{base, to, max_len, {}, {}};
  if (max_len >= 1 && from != to) search.run(from);

  std::vector<PotentialChain> result;
  for (const auto& path : search.paths) {
    PotentialChain pc;
    pc.path = path;
    for (std::size_t h = 0; h + 1 < path.size(); ++h) {
      const std::string& u = path[h];
      const std::string& v = path[h + 1];
      if (covered(u, v)) continue;
      pc.missing_hops.push_back({u, v});

      // Only a covered next hop constrains what the gap must yield on v.
      std::vector<std::set<std::string>> needs;
      if (h + 2 < path.size() && covered(v, path[h + 2])) {
        needs = needs_on(doc, graph, v, path[h + 2]);
      }
      const std::string& category = base.node(u).category;
      std::vector<std::string> picks;
      for (const auto& a : doc.attacks) {
        if (base.node(a.object).category != category) continue;
        std::set<std::string> yields;
        for (const auto& g : a.a_results) yields.insert(g.permission);
        bool fits = needs.empty() ||
                    std::any_of(needs.begin(), needs.end(),
                                [&](const std::set<std::string>& need) {
                                  return std::includes(yields.begin(),
                                                       yields.end(),
                                                       need.begin(), need.end());
                                });
        if (fits) picks.push_back(a.id);
      }
      std::sort(picks.begin(), picks.end());
      pc.suggestions.push_back(std::move(picks));
    }
    if (!pc.missing_hops.empty()) result.push_back(std::move(pc));
  }
  std::sort(result.begin(), result.end(),
            [](const PotentialChain& a, const PotentialChain& b) {
              if (a.missing_hops.size() != b.missing_hops.size()) {
                return a.missing_hops.size() < b.missing_hops.size();
              }
              return a.path < b.path;
            });
  return result;
}

}  // namespace adgraph
