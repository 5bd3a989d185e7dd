#include <algorithm>
#include <queue>
#include <set>

#include "snd/structure.hpp"

namespace snd {

namespace {

bool tree_is_connected(const std::vector<std::vector<int>>& adj, const std::vector<int>& members) {
  if (members.empty()) return true;
  std::set<int> allowed(members.begin(), members.end());
  std::set<int> seen{members.front()};
  std::vector<int> stack{members.front()};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[static_cast<std::size_t>(x)]) {
      if (allowed.count(y) && seen.insert(y).second) stack.push_back(y);
    }
  }
  return seen.size() == allowed.size();
}

}  // namespace

int CondensedBlockTree::degree(int b) const {
  int d = 0;
  for (const auto& e : edges) d += (e.from == b) + (e.to == b);
  return d;
}

BlockTree block_tree(const Graph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::kDisconnected, "block tree needs a connected graph");
  auto dec = blocks_and_cuts(g);
  BlockTree bt;
  bt.blocks = std::move(dec.blocks);
  bt.adjacency.resize(bt.blocks.size());
  for (NodeId v : dec.cut_nodes) {
    auto members = dec.blocks_of_node[static_cast<std::size_t>(v)];
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      bt.tree_edges.emplace_back(members[i], members[i + 1]);
      bt.adjacency[static_cast<std::size_t>(members[i])].push_back(members[i + 1]);
      bt.adjacency[static_cast<std::size_t>(members[i + 1])].push_back(members[i]);
    }
    bt.cut_node_map.emplace_back(v, std::move(members));
  }
  for (auto& adj : bt.adjacency) std::sort(adj.begin(), adj.end());
  return bt;
}

CondensedBlockTree condensed_block_tree(const BlockTree& bt) {
  CondensedBlockTree cbt;
  const int nb = static_cast<int>(bt.blocks.size());
  for (int b = 0; b < nb; ++b) {
    if (bt.degree(b) != 2) cbt.nodes.push_back(b);
  }
  for (int b : cbt.nodes) {
    for (int first : bt.adjacency[static_cast<std::size_t>(b)]) {
      CondensedEdge e;
      e.from = b;
      int prev = b;
      int cur = first;
      while (bt.degree(cur) == 2) {
        e.through.push_back(cur);
        const auto& adj = bt.adjacency[static_cast<std::size_t>(cur)];
        int nxt = adj[0] == prev ? adj[1] : adj[0];
        prev = cur;
        cur = nxt;
      }
      e.to = cur;
      if (e.from < e.to) cbt.edges.push_back(std::move(e));
    }
  }
  return cbt;
}

std::string check_block_tree(const Graph& g, const BlockTree& bt) {
  auto dec = blocks_and_cuts(g);
  auto canon = [](std::vector<Block> blocks) {
    std::vector<std::pair<std::vector<EdgeId>, NodeSet>> out;
    for (auto& b : blocks) out.emplace_back(b.edges, b.nodes);
    std::sort(out.begin(), out.end());
    return out;
  };
  if (canon(dec.blocks) != canon(bt.blocks)) return "tree nodes are not the blocks of the graph";
  const auto nb = bt.blocks.size();
  if (bt.adjacency.size() != nb) return "adjacency size mismatch";
  if (bt.tree_edges.size() + 1 != nb) return "edge count is not |nodes| - 1";
  std::vector<int> all(nb);
  for (std::size_t i = 0; i < nb; ++i) all[i] = static_cast<int>(i);
  if (!tree_is_connected(bt.adjacency, all)) return "tree is disconnected";
  for (auto [a, b] : bt.tree_edges) {
    const auto& na = bt.blocks[static_cast<std::size_t>(a)].nodes;
    const auto& nbn = bt.blocks[static_cast<std::size_t>(b)].nodes;
    std::vector<NodeId> shared;
    std::set_intersection(na.begin(), na.end(), nbn.begin(), nbn.end(), std::back_inserter(shared));
    if (shared.empty()) return "adjacent blocks share no cut-node";
  }
  // Gamma_blocks(v) induces a connected subtree.
  for (NodeId v : dec.cut_nodes) {
    std::vector<int> members;
    for (std::size_t b = 0; b < nb; ++b) {
      if (contains(bt.blocks[b].nodes, v)) members.push_back(static_cast<int>(b));
    }
    if (!tree_is_connected(bt.adjacency, members)) {
      return "blocks at cut-node " + std::to_string(v) + " are not connected in the tree";
    }
  }
  // A bridge block is adjacent to a block at each cut endpoint.
  for (std::size_t b = 0; b < nb; ++b) {
    if (!bt.blocks[b].is_bridge()) continue;
    for (NodeId end : bt.blocks[b].nodes) {
      if (!contains(dec.cut_nodes, end)) continue;
      bool ok = false;
      for (int o : bt.adjacency[b]) ok = ok || contains(bt.blocks[static_cast<std::size_t>(o)].nodes, end);
      if (!ok) return "bridge block is not adjacent to its neighbours";
    }
  }
  return {};
}

std::string check_condensed_block_tree(const BlockTree& bt, const CondensedBlockTree& cbt) {
  std::vector<int> expected;
  for (int b = 0; b < static_cast<int>(bt.blocks.size()); ++b) {
    if (bt.degree(b) != 2) expected.push_back(b);
  }
  if (expected != cbt.nodes) return "node set differs from {b : deg(b) != 2}";
  std::set<std::pair<int, int>> covered;
  for (const auto& e : cbt.edges) {
    std::vector<int> walk{e.from};
    walk.insert(walk.end(), e.through.begin(), e.through.end());
    walk.push_back(e.to);
    for (int x : e.through) {
      if (bt.degree(x) != 2) return "condensed edge passes a node of degree != 2";
    }
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      const auto& adj = bt.adjacency[static_cast<std::size_t>(walk[i])];
      if (!std::binary_search(adj.begin(), adj.end(), walk[i + 1])) return "condensed edge is not a tree path";
      auto key = std::minmax(walk[i], walk[i + 1]);
      if (!covered.insert({key.first, key.second}).second) return "tree edge covered twice";
    }
  }
  if (covered.size() != bt.tree_edges.size()) return "tree edges not all covered";
  if (!cbt.nodes.empty() && cbt.edges.size() + 1 != cbt.nodes.size()) return "condensed tree is not a tree";
  return {};
}

}  // namespace snd
