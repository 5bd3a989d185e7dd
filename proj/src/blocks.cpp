#include <algorithm>
#include <numeric>
#include <queue>

#include "snd/structure.hpp"

namespace snd {

BlockDecomposition blocks_and_cuts(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  BlockDecomposition out;
  out.blocks_of_node.resize(n);

  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<EdgeId> edge_stack;
  int time = 0;

  struct Frame {
    NodeId v;
    EdgeId parent_edge;
    std::size_t next;
  };
  std::vector<Frame> frames;

  auto emit_block = [&](std::vector<EdgeId> edges) {
    Block b;
    std::vector<NodeId> nodes;
    for (EdgeId e : edges) {
      nodes.push_back(g.edge(e).u);
      nodes.push_back(g.edge(e).v);
    }
    std::sort(edges.begin(), edges.end());
    b.nodes = make_node_set(std::move(nodes));
    b.edges = std::move(edges);
    out.blocks.push_back(std::move(b));
  };

  for (NodeId root = 0; root < g.num_nodes(); ++root) {
    if (disc[static_cast<std::size_t>(root)] != -1) continue;
    if (g.degree(root) == 0) {
      disc[static_cast<std::size_t>(root)] = time++;
      out.blocks.push_back(Block{{root}, {}});
      continue;
    }
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = time++;
    frames.push_back({root, kNoEdge, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        EdgeId e = inc[f.next++];
        if (e == f.parent_edge) continue;
        NodeId w = g.edge(e).other(f.v);
        auto wi = static_cast<std::size_t>(w);
        auto vi = static_cast<std::size_t>(f.v);
        if (disc[wi] == -1) {
          edge_stack.push_back(e);
          disc[wi] = low[wi] = time++;
          frames.push_back({w, e, 0});
        } else if (disc[wi] < disc[vi]) {
          edge_stack.push_back(e);
          low[vi] = std::min(low[vi], disc[wi]);
        }
        continue;
      }
      Frame done = f;
      frames.pop_back();
      if (frames.empty()) break;
      NodeId p = frames.back().v;
      auto pi = static_cast<std::size_t>(p);
      auto vi = static_cast<std::size_t>(done.v);
      low[pi] = std::min(low[pi], low[vi]);
      if (low[vi] >= disc[pi]) {
        std::vector<EdgeId> block_edges;
        while (true) {
          EdgeId top = edge_stack.back();
          edge_stack.pop_back();
          block_edges.push_back(top);
          if (top == done.parent_edge) break;
        }
        emit_block(std::move(block_edges));
      }
    }
  }

  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    for (NodeId v : out.blocks[b].nodes) out.blocks_of_node[static_cast<std::size_t>(v)].push_back(static_cast<int>(b));
    if (out.blocks[b].is_bridge()) out.bridges.push_back(out.blocks[b].edges.front());
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (out.blocks_of_node[static_cast<std::size_t>(v)].size() >= 2) out.cut_nodes.push_back(v);
  }
  std::sort(out.bridges.begin(), out.bridges.end());
  return out;
}

bool is_connected(const Graph& g) {
  if (g.num_nodes() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.num_nodes()), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  NodeId count = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(v)) {
      NodeId w = g.edge(e).other(v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.num_nodes();
}

bool is_2ec(const Graph& g) {
  if (g.num_nodes() < 2 || !is_connected(g)) return false;
  return blocks_and_cuts(g).bridges.empty();
}

bool is_2nc(const Graph& g) {
  if (g.num_nodes() < 3 || !is_connected(g)) return false;
  return blocks_and_cuts(g).cut_nodes.empty();
}

bool is_connected(const Graph& g, const EdgeSet& edges) { return is_connected(extract_subgraph(g, edges).graph); }
bool is_2ec(const Graph& g, const EdgeSet& edges) { return is_2ec(extract_subgraph(g, edges).graph); }
bool is_2nc(const Graph& g, const EdgeSet& edges) { return is_2nc(extract_subgraph(g, edges).graph); }

NodeSet degree3_nodes(const Graph& g) {
  NodeSet out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) >= 3) out.push_back(v);
  }
  return out;
}

NodeSet degree3_nodes(const Graph& g, const EdgeSet& edges) {
  std::vector<int> deg(static_cast<std::size_t>(g.num_nodes()), 0);
  for (EdgeId e : edges.ids()) {
    ++deg[static_cast<std::size_t>(g.edge(e).u)];
    ++deg[static_cast<std::size_t>(g.edge(e).v)];
  }
  NodeSet out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (deg[static_cast<std::size_t>(v)] >= 3) out.push_back(v);
  }
  return out;
}

}  // namespace snd
