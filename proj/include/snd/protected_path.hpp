#pragma once

#include <optional>

#include "snd/chains.hpp"
#include "snd/solution.hpp"

namespace snd {

/// Connected after deleting any one unsafe edge: equivalently, the
/// terminals share a component once every unsafe bridge is removed.
bool protection_feasible(const Graph& g, const NodeSet& terminals);

/// FST feasibility of (V(F) + T, F): connected, and no unsafe edge of F is a
/// bridge of it.
bool fst_feasible(const Graph& g, const EdgeSet& edges, const NodeSet& terminals);

/// Edge sets of two edge-disjoint a,b-paths of minimum total size, found by
/// a two-unit min-cost flow. nullopt when a and b are 2-edge-separated.
std::optional<std::vector<EdgeId>> min_two_disjoint_paths(const Graph& g, NodeId a, NodeId b);

/// Minimum-size 1-protected paths between query nodes.
///
/// A minimal 1-protected path is a chain of safe bridges and 2EC blocks
/// whose joints have degree >= 3 (or are the ends). On the graph with
/// degree-2 runs contracted, each piece between two surviving nodes is
/// either an all-safe run or a pair of edge-disjoint paths; the answer is a
/// shortest route over those pieces.
class ProtectedPathTable {
 public:
  ProtectedPathTable(const Graph& g, const NodeSet& query_nodes);

  const NodeSet& nodes() const { return queries_; }
  /// nullopt = no protected path (infinite entry).
  std::optional<std::size_t> cost(NodeId u, NodeId v) const;
  /// Sorted edge ids; null when infinite.
  const std::vector<EdgeId>* path(NodeId u, NodeId v) const;

 private:
  std::size_t index(NodeId v) const;

  NodeSet queries_;
  std::vector<std::optional<std::vector<EdgeId>>> paths_;  // row-major over queries_
};

/// Throws NoProtectedPath. u == v gives the empty path.
Solution min_protected_path(const Graph& g, NodeId u, NodeId v);

}  // namespace snd
