#pragma once

#include <chrono>
#include <optional>

#include "snd/graph.hpp"

namespace snd {

// Brute-force reference solvers. The feasibility predicates here are coded
// from the problem definitions and share nothing with the solvers except
// the Graph type.

enum class OracleKind : std::uint8_t { kCycle, kPath, k2ncs, k2ecs, kFst, kProtectedPath };

OracleKind oracle_kind(ProblemKind kind);

struct OracleProblem {
  OracleKind kind = OracleKind::kCycle;
  NodeSet terminals;
  NodeId s = kNoNode;  // path endpoints (kPath, kProtectedPath)
  NodeId t = kNoNode;
};

struct OracleBudget {
  int max_nodes = 24;
  int max_edges = 22;
  std::chrono::milliseconds max_millis{std::chrono::minutes(5)};
};

struct OracleResult {
  EdgeSet edges;
  Cost cost = 0;
  std::uint64_t subsets_checked = 0;
};

/// Cycle: simple cycle through every terminal. Path: simple s,t-path through
/// every terminal. 2NCS / 2ECS: 2NC / 2EC subgraph (V(F), F) containing T.
/// FST: (V(F) + T, F) connected and still connected after deleting any one
/// unsafe edge of F. Protected path: the FST predicate for T = {s, t}.
bool oracle_feasible(const Graph& g, const EdgeSet& edges, const OracleProblem& problem);

/// Size-ordered subset scan (weighted: full scan, cheapest wins). Ties go to
/// the lexicographically smallest edge-id set. nullopt when infeasible;
/// throws BudgetExceeded.
std::optional<OracleResult> try_oracle_min_subgraph(const Graph& g, const OracleProblem& problem, bool weighted,
                                                    const OracleBudget& budget = {});

/// Throwing form: Infeasible when nothing qualifies.
OracleResult oracle_min_subgraph(const Graph& g, const OracleProblem& problem, bool weighted,
                                 const OracleBudget& budget = {});
OracleResult oracle_min_subgraph(const Graph& g, const NodeSet& terminals, ProblemKind kind, bool weighted,
                                 const OracleBudget& budget = {});

/// Second, independently coded enumerator: include/exclude branch and bound
/// on edge ids with a cost bound. Same optimum value as the subset scan.
std::optional<OracleResult> oracle_branch_and_bound(const Graph& g, const OracleProblem& problem, bool weighted,
                                                    const OracleBudget& budget = {});

}  // namespace snd
