#pragma once

#include <functional>
#include <optional>

#include "snd/solution.hpp"

namespace snd {

/// Rounded and subdivided copy of a weighted graph.
///
/// Every surviving edge e (c_e <= discard_above) gets c~_e = mu * max(1,
/// ceil(c_e / mu)) and becomes a path of c~_e / mu unit edges that inherit
/// its safety flag. Original nodes keep their ids.
struct ScalingGadget {
  Cost beta = 0;
  Cost mu = 0;
  Cost discard_above = 0;
  std::vector<std::optional<Cost>> rounded_costs;  // per original edge; nullopt = discarded
  std::vector<std::int64_t> units;                 // per original edge; 0 = discarded
  Graph subdivided;
  std::vector<EdgeId> edge_origin_map;             // subdivided edge -> original edge
};

/// Feasibility of a problem on (V, F) for an edge subset F, given as a graph
/// over the same node ids that holds only the edges of F.
using PrefixProbe = std::function<bool(const Graph& restricted)>;

struct Threshold {
  std::vector<EdgeId> order;  // edges sorted by (cost, id)
  std::size_t index = 0;      // smallest j (1-based) with a feasible prefix
  Cost beta = 0;              // c(e_j)
};

/// Ascending scan over prefixes of the cost order. nullopt when even the
/// full graph is infeasible.
std::optional<Threshold> find_threshold(const Graph& g, const PrefixProbe& probe, SolveStats* stats = nullptr);

/// Graph over g's node ids holding only the listed edges; `kept` maps its
/// edge ids back to g.
Graph restrict_edges(const Graph& g, const std::vector<EdgeId>& edges, std::vector<EdgeId>* kept = nullptr);

ScalingGadget subdivide(const Graph& g, const Cost& beta, const Cost& mu, const Cost& discard_above);

/// Threshold scan plus the first rounding pass: mu = eps * beta * L / n^2,
/// discarding c_e > L * beta, where L bounds the edge count of a minimal
/// solution (L = n gives mu = eps * beta / n). Throws Infeasible.
ScalingGadget build_scaling_gadget(const Graph& g, const Cost& epsilon, const PrefixProbe& probe,
                                   int solution_edge_bound, SolveStats* stats = nullptr);

/// Original edges whose whole subdivision path is selected. A partially
/// selected path is an internal error.
EdgeSet map_back(const ScalingGadget& gadget, const Graph& g, const EdgeSet& unit_edges);

/// Unweighted solve on a unit-cost graph (nullopt when it finds nothing).
/// The returned edges refer to unit_graph.
using UnitSolver = std::function<std::optional<Solution>(const Graph& unit_graph)>;

struct ScaledProblem {
  int solution_edge_bound = 0;  // L
  PrefixProbe probe;
  UnitSolver solve_unit;
};

/// (1 + epsilon)-approximation by rounding and subdivision. When L > n a
/// second pass reruns with mu = eps * LB / L, where LB is the lower bound on
/// the optimum certified by the first pass. Throws Infeasible.
Solution solve_scaled(const Graph& g, const Cost& epsilon, const ScaledProblem& problem);

/// Weighted Steiner cycle via one rounding pass (L = n).
Solution weighted_steiner_cycle(const Graph& g, const NodeSet& terminals, const Cost& epsilon, double eta,
                                std::uint64_t seed, std::shared_ptr<CycleEngine> engine = nullptr);

}  // namespace snd
