#pragma once

#include "snd/enumerate.hpp"
#include "snd/solution.hpp"

namespace snd {

/// One iteration of the marker search: guessed degree-3 nodes S, an ordered
/// partition of T + S, and the anchor pair of each path ear.
struct MarkerConfiguration {
  NodeSet s;
  OrderedPartition partition;
  std::vector<std::pair<NodeId, NodeId>> anchors;  // anchors[i] ends the path through parts[i + 1]
};

/// True when all terminals lie in one 2NC block of g.
bool terminals_share_2nc_block(const Graph& g, const NodeSet& terminals);

/// Largest |S| the search enumerates.
int max_marker_count(int k, MarkerBound bound);

/// Union of a minimum Steiner cycle through parts[0] and minimum Steiner
/// paths through parts[i + 1] between anchors[i]. Throws SubcallFailed.
Solution assemble_candidate(const Graph& g, const MarkerConfiguration& cfg, const SolverOptions& opts = {});

/// Minimum-size 2NC subgraph containing the terminals (|T| >= 2). Parallel
/// edges are dropped first since they never occur in a minimal solution.
/// Throws Infeasible when the terminals do not share a 2NC block.
Solution solve_2ncs_unweighted(const Graph& g, const NodeSet& terminals, const SolverOptions& opts = {});

/// (1 + epsilon)-approximation through cost scaling. Throws Infeasible.
Solution solve_2ncs_weighted(const Graph& g, const NodeSet& terminals, const Cost& epsilon,
                             const SolverOptions& opts = {});

}  // namespace snd
