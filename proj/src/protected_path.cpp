#include "snd/protected_path.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <queue>

#include "snd/structure.hpp"

namespace snd {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

// Two-unit min-cost flow on a multigraph whose undirected edges carry
// capacity 1 and a positive length. Returns the ids of the edges used.
struct TwoFlow {
  struct Arc {
    int to;
    int cap;
    int cost;
    int edge;  // undirected edge index
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;

  explicit TwoFlow(int n) : out(static_cast<std::size_t>(n)) {}

  void add(int a, int b, int length, int edge) {
    // a->b and b->a, each with its residual twin.
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      out[static_cast<std::size_t>(x)].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({y, 1, length, edge});
      out[static_cast<std::size_t>(y)].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({x, 0, -length, edge});
    }
  }

  std::optional<std::vector<int>> solve(int s, int t) {
    const auto n = out.size();
    for (int unit = 0; unit < 2; ++unit) {
      std::vector<long long> dist(n, LLONG_MAX);
      std::vector<int> via(n, -1);
      dist[static_cast<std::size_t>(s)] = 0;
      for (std::size_t round = 0; round < n; ++round) {
        bool changed = false;
        for (std::size_t x = 0; x < n; ++x) {
          if (dist[x] == LLONG_MAX) continue;
          for (int ai : out[x]) {
            const Arc& a = arcs[static_cast<std::size_t>(ai)];
            if (a.cap == 0) continue;
            long long d = dist[x] + a.cost;
            if (d < dist[static_cast<std::size_t>(a.to)]) {
              dist[static_cast<std::size_t>(a.to)] = d;
              via[static_cast<std::size_t>(a.to)] = ai;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[static_cast<std::size_t>(t)] == LLONG_MAX) return std::nullopt;
      for (int x = t; x != s;) {
        int ai = via[static_cast<std::size_t>(x)];
        arcs[static_cast<std::size_t>(ai)].cap -= 1;
        arcs[static_cast<std::size_t>(ai ^ 1)].cap += 1;
        x = arcs[static_cast<std::size_t>(ai ^ 1)].to;
      }
    }
    // Net flow per undirected edge; opposite units cancel.
    std::vector<int> net(arcs.size() / 4, 0);
    for (std::size_t i = 0; i < arcs.size(); i += 4) {
      int forward = 1 - arcs[i].cap;
      int backward = 1 - arcs[i + 2].cap;
      net[i / 4] = forward - backward;
    }
    std::vector<int> used;
    for (std::size_t i = 0; i < net.size(); ++i) {
      if (net[i] != 0) used.push_back(arcs[i * 4].edge);
    }
    return used;
  }
};

std::vector<EdgeId> link_union(const ChainGraph& cg, const std::vector<int>& links) {
  std::vector<EdgeId> edges;
  for (int li : links) {
    const auto& l = cg.links[static_cast<std::size_t>(li)].edges;
    edges.insert(edges.end(), l.begin(), l.end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::optional<std::vector<int>> two_disjoint_links(const ChainGraph& cg, int a, int b) {
  TwoFlow flow(cg.num_nodes());
  for (std::size_t li = 0; li < cg.links.size(); ++li) {
    const auto& l = cg.links[li];
    if (l.a == l.b) continue;
    flow.add(l.a, l.b, l.length(), static_cast<int>(li));
  }
  return flow.solve(a, b);
}

}  // namespace

bool protection_feasible(const Graph& g, const NodeSet& terminals) {
  if (terminals.empty()) return true;
  auto dec = blocks_and_cuts(g);
  std::vector<int> parent(static_cast<std::size_t>(g.num_nodes()));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> unsafe_bridge(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : dec.bridges) {
    if (!g.edge(e).safe()) unsafe_bridge[static_cast<std::size_t>(e)] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (!unsafe_bridge[static_cast<std::size_t>(e.id)]) {
      parent[static_cast<std::size_t>(find_root(parent, e.u))] = find_root(parent, e.v);
    }
  }
  int root = find_root(parent, terminals.front());
  return std::all_of(terminals.begin(), terminals.end(), [&](NodeId t) { return find_root(parent, t) == root; });
}

bool fst_feasible(const Graph& g, const EdgeSet& edges, const NodeSet& terminals) {
  Subgraph sub = extract_subgraph(g, edges);
  std::vector<NodeId> extra;
  for (NodeId t : terminals) {
    if (t < 0 || t >= g.num_nodes()) return false;
    if (sub.from_parent_node[static_cast<std::size_t>(t)] == kNoNode) extra.push_back(t);
  }
  // Terminals outside V(F) are isolated nodes of (V(F) + T, F).
  if (!extra.empty()) return sub.graph.num_nodes() == 0 && extra.size() == 1;
  if (!is_connected(sub.graph)) return false;
  auto dec = blocks_and_cuts(sub.graph);
  return std::all_of(dec.bridges.begin(), dec.bridges.end(), [&](EdgeId e) { return sub.graph.edge(e).safe(); });
}

std::optional<std::vector<EdgeId>> min_two_disjoint_paths(const Graph& g, NodeId a, NodeId b) {
  if (a == b) return std::vector<EdgeId>{};
  std::vector<char> keep(static_cast<std::size_t>(g.num_nodes()), 0);
  keep[static_cast<std::size_t>(a)] = keep[static_cast<std::size_t>(b)] = 1;
  ChainGraph cg = compress_chains(g, keep);
  auto links = two_disjoint_links(cg, cg.from_original[static_cast<std::size_t>(a)],
                                  cg.from_original[static_cast<std::size_t>(b)]);
  if (!links) return std::nullopt;
  return link_union(cg, *links);
}

ProtectedPathTable::ProtectedPathTable(const Graph& g, const NodeSet& query_nodes)
    : queries_(make_node_set(query_nodes)) {
  std::vector<char> keep(static_cast<std::size_t>(g.num_nodes()), 0);
  for (NodeId v : queries_) {
    if (v < 0 || v >= g.num_nodes()) throw Error(ErrorCode::kInvalidArgument, "query node out of range");
    keep[static_cast<std::size_t>(v)] = 1;
  }
  ChainGraph cg = compress_chains(g, keep);
  const auto n = static_cast<std::size_t>(cg.num_nodes());

  // Cheapest piece between every pair of surviving nodes.
  std::vector<std::optional<std::vector<EdgeId>>> piece(n * n);
  auto offer = [&](std::size_t a, std::size_t b, std::vector<EdgeId> edges) {
    auto& slot = piece[a * n + b];
    if (!slot || edges.size() < slot->size() || (edges.size() == slot->size() && edges < *slot)) {
      piece[b * n + a] = edges;
      slot = std::move(edges);
    }
  };
  for (std::size_t li = 0; li < cg.links.size(); ++li) {
    const auto& l = cg.links[li];
    if (l.a != l.b && l.all_safe) offer(static_cast<std::size_t>(l.a), static_cast<std::size_t>(l.b), l.edges);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      auto links = two_disjoint_links(cg, static_cast<int>(a), static_cast<int>(b));
      if (links) offer(a, b, link_union(cg, *links));
    }
  }

  const std::size_t q = queries_.size();
  paths_.assign(q * q, std::nullopt);
  for (std::size_t qi = 0; qi < q; ++qi) {
    auto src = static_cast<std::size_t>(cg.from_original[static_cast<std::size_t>(queries_[qi])]);
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<std::size_t> prev(n, SIZE_MAX);
    std::vector<char> done(n, 0);
    dist[src] = 0;
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t x = SIZE_MAX;
      for (std::size_t y = 0; y < n; ++y) {
        if (!done[y] && dist[y] != SIZE_MAX && (x == SIZE_MAX || dist[y] < dist[x])) x = y;
      }
      if (x == SIZE_MAX) break;
      done[x] = 1;
      for (std::size_t y = 0; y < n; ++y) {
        const auto& p = piece[x * n + y];
        if (!p || done[y]) continue;
        if (dist[x] + p->size() < dist[y]) {
          dist[y] = dist[x] + p->size();
          prev[y] = x;
        }
      }
    }
    for (std::size_t qj = 0; qj < q; ++qj) {
      auto dst = static_cast<std::size_t>(cg.from_original[static_cast<std::size_t>(queries_[qj])]);
      if (dist[dst] == SIZE_MAX) continue;
      std::vector<EdgeId> edges;
      for (std::size_t x = dst; x != src; x = prev[x]) {
        const auto& p = *piece[prev[x] * n + x];
        edges.insert(edges.end(), p.begin(), p.end());
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      paths_[qi * q + qj] = std::move(edges);
    }
  }
  // Keep the table symmetric: both directions use the row of the smaller id.
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = a + 1; b < q; ++b) paths_[b * q + a] = paths_[a * q + b];
  }
}

std::size_t ProtectedPathTable::index(NodeId v) const {
  auto it = std::lower_bound(queries_.begin(), queries_.end(), v);
  if (it == queries_.end() || *it != v) throw Error(ErrorCode::kInvalidArgument, "node is not a table query node");
  return static_cast<std::size_t>(it - queries_.begin());
}

std::optional<std::size_t> ProtectedPathTable::cost(NodeId u, NodeId v) const {
  const auto* p = path(u, v);
  if (!p) return std::nullopt;
  return p->size();
}

const std::vector<EdgeId>* ProtectedPathTable::path(NodeId u, NodeId v) const {
  const auto& slot = paths_[index(u) * queries_.size() + index(v)];
  return slot ? &*slot : nullptr;
}

Solution min_protected_path(const Graph& g, NodeId u, NodeId v) {
  ProtectedPathTable table(g, make_node_set({u, v}));
  const auto* p = table.path(u, v);
  if (!p) throw Error(ErrorCode::kNoProtectedPath, "no 1-protected path between " + std::to_string(u) + " and " +
                                                       std::to_string(v));
  return make_solution(g, EdgeSet(static_cast<std::size_t>(g.num_edges()), *p));
}

}  // namespace snd
