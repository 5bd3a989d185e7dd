#pragma once

#include <span>
#include <vector>

#include "snd/edge_set.hpp"
#include "snd/types.hpp"

namespace snd {

struct Edge {
  EdgeId id = kNoEdge;
  NodeId u = kNoNode;
  NodeId v = kNoNode;
  Cost cost = 1;
  Safety safety = Safety::kUnsafe;

  NodeId other(NodeId x) const { return x == u ? v : u; }
  bool safe() const { return safety == Safety::kSafe; }
};

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

NodeSet make_node_set(std::vector<NodeId> nodes);
bool contains(const NodeSet& set, NodeId v);

/// Loop-free multigraph over dense node ids 0..n-1 with exact non-negative
/// edge costs and a safe/unsafe flag per edge.
class Graph {
 public:
  Graph() = default;
  explicit Graph(NodeId num_nodes);

  NodeId add_node();
  /// Throws InvalidArgument on self-loops, out-of-range endpoints, or
  /// negative costs.
  EdgeId add_edge(NodeId u, NodeId v, Cost cost = 1, Safety safety = Safety::kUnsafe);

  NodeId num_nodes() const { return static_cast<NodeId>(adjacency_.size()); }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const EdgeId> incident(NodeId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }

  bool unit_costs() const;
  Cost cost_of(const EdgeSet& edges) const;
  EdgeSet all_edges() const;
  EdgeSet empty_edges() const { return EdgeSet(edges_.size()); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
};

/// Compact copy of the subgraph (V(F), F): nodes touched by F, renumbered.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent_node;  // sub node -> parent node
  std::vector<EdgeId> to_parent_edge;  // sub edge -> parent edge
  std::vector<NodeId> from_parent_node;  // parent node -> sub node or kNoNode
};

Subgraph extract_subgraph(const Graph& g, const EdgeSet& edges);

/// Nodes incident to at least one edge of the set.
NodeSet touched_nodes(const Graph& g, const EdgeSet& edges);

/// Copy of g with every edge relabelled to the given safety.
Graph with_safety(const Graph& g, Safety safety);

/// Copy of g with every cost set to 1.
Graph with_unit_costs(const Graph& g);

/// Copy of g keeping only the lowest-id edge between each node pair.
/// `kept` receives the surviving edge ids of g, indexed by new edge id.
Graph simple_graph(const Graph& g, std::vector<EdgeId>& kept);

}  // namespace snd
