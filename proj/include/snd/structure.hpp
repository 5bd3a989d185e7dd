#pragma once

#include <vector>

#include "snd/graph.hpp"

namespace snd {

// ---------------------------------------------------------------------------
// Blocks, cut-nodes, bridges.

struct Block {
  NodeSet nodes;
  std::vector<EdgeId> edges;  // sorted

  bool is_isolated_node() const { return edges.empty(); }
  bool is_bridge() const { return edges.size() == 1; }
  /// A maximal 2NC subgraph (at least three nodes).
  bool is_two_node_connected() const { return nodes.size() >= 3; }
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  NodeSet cut_nodes;
  std::vector<EdgeId> bridges;  // sorted
  std::vector<std::vector<int>> blocks_of_node;  // node -> indices into blocks
};

/// Lowpoint DFS per connected component. Isolated nodes are reported as
/// degenerate one-node blocks with no edges.
BlockDecomposition blocks_and_cuts(const Graph& g);

bool is_connected(const Graph& g);
/// |V| >= 2, connected, bridgeless.
bool is_2ec(const Graph& g);
/// |V| >= 3, connected, no cut-node.
bool is_2nc(const Graph& g);

// Predicates on the subgraph (V(F), F) of g.
bool is_connected(const Graph& g, const EdgeSet& edges);
bool is_2ec(const Graph& g, const EdgeSet& edges);
bool is_2nc(const Graph& g, const EdgeSet& edges);

/// Nodes with degree >= 3.
NodeSet degree3_nodes(const Graph& g);
NodeSet degree3_nodes(const Graph& g, const EdgeSet& edges);

// ---------------------------------------------------------------------------
// Ear decompositions.

enum class EarKind : std::uint8_t { kOpen, kClosed };

struct Ear {
  EarKind kind = EarKind::kOpen;
  /// Walk order: nodes.size() == edges.size() + 1; a closed ear repeats its
  /// first node at the end.
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
};

struct EarDecomposition {
  NodeId base_node = kNoNode;  // P0
  std::vector<Ear> ears;
  /// Leading ears that each carry a terminal as an internal node; only set
  /// by terminal_ear_decomposition.
  int terminal_ears = 0;
};

/// Chain decomposition on a DFS tree. Throws NotTwoConnected when the graph
/// is not 2EC (or not 2NC when an open decomposition is required).
EarDecomposition ear_decomposition(const Graph& g, bool open_required);

/// Ear decomposition that covers the terminals first: P0 is a terminal and
/// every one of the first `terminal_ears` ears has a terminal internally.
/// Remaining edges follow as ordinary open ears.
EarDecomposition terminal_ear_decomposition(const Graph& h, const NodeSet& terminals);

/// Validates every structural rule of an ear decomposition of (V(F), F)
/// (F = all edges when `edges` is null). Returns an empty string when valid,
/// otherwise the first violation.
std::string check_ear_decomposition(const Graph& g, const EarDecomposition& dec, bool open_required,
                                    const EdgeSet* edges = nullptr);

// ---------------------------------------------------------------------------
// Block trees.

struct BlockTree {
  std::vector<Block> blocks;
  std::vector<std::pair<int, int>> tree_edges;
  std::vector<std::vector<int>> adjacency;
  /// cut-node -> blocks containing it (Gamma_blocks).
  std::vector<std::pair<NodeId, std::vector<int>>> cut_node_map;

  int degree(int b) const { return static_cast<int>(adjacency[static_cast<std::size_t>(b)].size()); }
};

struct CondensedEdge {
  int from = -1;  // block-tree node ids
  int to = -1;
  std::vector<int> through;  // degree-2 block-tree nodes traversed, in order
};

struct CondensedBlockTree {
  std::vector<int> nodes;  // block-tree node ids with degree != 2
  std::vector<CondensedEdge> edges;

  int degree(int b) const;
  bool is_leaf(int b) const { return degree(b) <= 1; }
};

/// Tree over all blocks of a connected graph (2NC blocks, bridges and
/// parallel-edge bundles). Blocks sharing a cut-node are chained in
/// increasing block order. Throws Disconnected.
BlockTree block_tree(const Graph& g);
CondensedBlockTree condensed_block_tree(const BlockTree& bt);

/// Empty string when bt satisfies the block-tree properties for g.
std::string check_block_tree(const Graph& g, const BlockTree& bt);
std::string check_condensed_block_tree(const BlockTree& bt, const CondensedBlockTree& cbt);

}  // namespace snd
