#pragma once

#include <functional>
#include <queue>
#include <random>
#include <vector>

#include "snd/graph.hpp"
#include "snd/io.hpp"

namespace snd::test {

inline Graph cycle_graph(int n, Safety s = Safety::kUnsafe) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1, s);
  return g;
}

inline Graph complete_graph(int n, Safety s = Safety::kUnsafe) {
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j, 1, s);
  }
  return g;
}

inline Graph path_graph(int n, Safety s = Safety::kUnsafe) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1, s);
  return g;
}

/// Two triangles 0-1-2 and 2-3-4 sharing node 2.
inline Graph bowtie() {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(4, 2);
  return g;
}

/// Hubs 0 and 1 joined by three paths through 2, 3 and 4.
inline Graph theta() {
  Graph g(5);
  for (NodeId mid : {2, 3, 4}) {
    g.add_edge(0, mid);
    g.add_edge(mid, 1);
  }
  return g;
}

/// Random multigraph: each of m edges picks two distinct endpoints.
inline Graph random_graph(std::mt19937_64& rng, int n, int m, double unsafe_share = 1.0, int max_cost = 0) {
  Graph g(n);
  std::uniform_int_distribution<int> node(0, n - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> cost(0, std::max(0, max_cost));
  while (g.num_edges() < m) {
    int u = node(rng);
    int v = node(rng);
    if (u == v) continue;
    Cost c = max_cost > 0 ? Cost(cost(rng)) : Cost(1);
    g.add_edge(u, v, c, coin(rng) < unsafe_share ? Safety::kUnsafe : Safety::kSafe);
  }
  return g;
}

// --- Reference predicates written against the definitions -----------------

/// Components of (V(F), F) restricted to nodes touched by F, ignoring one
/// optional node and one optional edge.
inline int count_components(const Graph& g, const EdgeSet& f, NodeId skip_node = kNoNode, EdgeId skip_edge = kNoEdge) {
  std::vector<int> parent(static_cast<std::size_t>(g.num_nodes()));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
  std::vector<char> present(static_cast<std::size_t>(g.num_nodes()), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!f.contains(e)) continue;
    const Edge& ed = g.edge(e);
    if (ed.u != skip_node) present[static_cast<std::size_t>(ed.u)] = 1;
    if (ed.v != skip_node) present[static_cast<std::size_t>(ed.v)] = 1;
    if (e == skip_edge || ed.u == skip_node || ed.v == skip_node) continue;
    parent[static_cast<std::size_t>(find(ed.u))] = find(ed.v);
  }
  int count = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (present[static_cast<std::size_t>(v)] && find(v) == v) ++count;
  }
  return count;
}

inline bool ref_2ec(const Graph& g, const EdgeSet& f) {
  if (f.empty() || count_components(g, f) != 1) return false;
  for (EdgeId e : f.ids()) {
    if (count_components(g, f, kNoNode, e) != 1) return false;
  }
  return true;
}

inline bool ref_2nc(const Graph& g, const EdgeSet& f) {
  NodeSet nodes = touched_nodes(g, f);
  if (nodes.size() < 3 || count_components(g, f) != 1) return false;
  for (NodeId v : nodes) {
    if (count_components(g, f, v) != 1) return false;
  }
  return true;
}

}  // namespace snd::test
