#pragma once

#include <optional>

#include "snd/protected_path.hpp"
#include "snd/solution.hpp"

namespace snd {

struct FstInstance {
  Graph graph;
  NodeSet terminals;
  bool modified = false;
  /// Pendant gadget: (terminal v, new node v', safe edge vv').
  struct Pendant {
    NodeId terminal = kNoNode;
    NodeId node = kNoNode;
    EdgeId edge = kNoEdge;
  };
  std::vector<Pendant> pendants;
  NodeId original_nodes = 0;
  EdgeId original_edges = 0;
};

FstInstance make_fst_instance(Graph g, const NodeSet& terminals);

/// Adds v' and a safe edge vv' per terminal; T' = {v'}. Throws AlreadyModified.
FstInstance apply_pendant_gadget(const FstInstance& inst);

/// Drops the k pendant edges. Throws NotModified when the instance is not
/// modified or the solution misses a pendant edge.
Solution strip_pendant_gadget(const FstInstance& modified, const Solution& sol);

/// Complete graph on parts X_1..X_r followed by the terminal singletons.
struct AuxiliaryGraphK {
  std::vector<NodeSet> nodes;
  /// cost[i][j]; nullopt = infinite. Zero when the two node sets overlap.
  std::vector<std::vector<std::optional<std::size_t>>> cost;
  /// Realizing protected path per finite entry (empty for overlaps).
  std::vector<std::vector<std::vector<EdgeId>>> path;
  std::vector<std::vector<std::pair<NodeId, NodeId>>> ends;
};

AuxiliaryGraphK build_auxiliary_k(const ProtectedPathTable& table, const std::vector<NodeSet>& parts,
                                  const NodeSet& terminals);

struct MstJoin {
  std::vector<EdgeId> edges;  // union of the realizing paths, sorted
  std::vector<ProtectedPiece> pieces;
  std::size_t tree_cost = 0;
};

/// Prim's algorithm over K. Throws InfiniteMst.
MstJoin mst_join(const AuxiliaryGraphK& k_graph);

/// Minimum-size feasible k-FST edge set of an unmodified instance.
/// Throws Infeasible.
Solution solve_kfst_unweighted(const FstInstance& inst, const SolverOptions& opts = {});

/// (1 + epsilon)-approximation through cost scaling. Throws Infeasible.
Solution solve_kfst_weighted(const FstInstance& inst, const Cost& epsilon, const SolverOptions& opts = {});

/// k-Steiner-2ECS: every edge relabelled unsafe, then the k-FST solver
/// (weighted when epsilon is given).
Solution solve_2ecs(const Graph& g, const NodeSet& terminals, std::optional<Cost> epsilon = std::nullopt,
                    const SolverOptions& opts = {});

}  // namespace snd
