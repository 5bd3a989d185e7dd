#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "snd/graph.hpp"

namespace snd {

class CycleEngine;

/// Audit runs the search loops literally; fast prunes subtrees that cannot
/// yield a strictly better candidate and may stop at a known lower bound.
enum class SearchMode : std::uint8_t { kAudit, kFast };

/// Size bound for the guessed degree-3 node set S in the 2NC search.
enum class MarkerBound : std::uint8_t {
  kTwoKMinusFour,  // |S| <= 2k - 4 (bound for minimal solutions)
  kTwoK,           // |S| <= 2k (literal loop bound)
};

struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;

  static Deadline after(std::chrono::milliseconds ms) { return {std::chrono::steady_clock::now() + ms}; }
  bool expired() const { return at && std::chrono::steady_clock::now() > *at; }
  void check() const;  // throws BudgetExceeded
};

/// Publishes a deadline to subroutines that take no options (the cycle
/// engines) on the current thread while the guard lives.
class DeadlineScope {
 public:
  explicit DeadlineScope(const Deadline& deadline);
  ~DeadlineScope();
  DeadlineScope(const DeadlineScope&) = delete;
  DeadlineScope& operator=(const DeadlineScope&) = delete;

  /// Throws BudgetExceeded when the innermost active deadline has passed.
  static void poll();

 private:
  const Deadline* previous_;
};

struct SolverOptions {
  double eta = 0.01;
  std::uint64_t seed = 1;
  SearchMode mode = SearchMode::kAudit;
  MarkerBound marker_bound = MarkerBound::kTwoKMinusFour;
  int threads = 1;
  /// Null selects the deterministic exhaustive engine.
  std::shared_ptr<CycleEngine> engine;
  Deadline deadline;
};

struct SolveStats {
  std::uint64_t iterations = 0;       // configurations of the outer search
  std::uint64_t candidates = 0;       // candidate subgraphs assembled
  std::uint64_t cycle_calls = 0;      // Steiner-cycle solves (memo misses)
  std::uint64_t path_calls = 0;       // Steiner-path solves (memo misses)
  std::uint64_t memo_hits = 0;
  std::uint64_t subsolver_calls = 0;  // 2NC subcalls from the k-FST search
  std::uint64_t threshold_probes = 0; // feasibility probes of the scaling scan
  std::uint64_t gadget_nodes = 0;     // |V| of the subdivided graph, weighted runs
  /// Incumbent size after every improvement, starting with |E|.
  std::vector<std::size_t> incumbent_trace;

  void merge(const SolveStats& other);
};

/// A connection between two nodes used by a k-FST solution.
struct ProtectedPiece {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  std::vector<EdgeId> edges;
};

/// Parameters of the cost-scaling passes behind a weighted answer.
struct ScalingInfo {
  Cost beta = 0;
  Cost mu = 0;                     // last pass
  Cost lower_bound = 0;            // on the optimum, used by the last pass
  int passes = 0;                  // 0 when the zero-cost prefix was feasible
  std::size_t gadget_nodes = 0;    // largest subdivided graph
  std::size_t node_budget = 0;     // |V| + floor(|E| n^2 / epsilon)
};

struct Solution {
  EdgeSet edges;
  Cost cost = 0;
  /// True when the search certifies optimality (unweighted exact solvers);
  /// false for (1 + epsilon)-approximate answers.
  bool exact = true;
  SolveStats stats;
  /// k-FST only: protected paths of the spanning-tree join and the edge
  /// sets of the 2NC blocks it connects.
  std::vector<ProtectedPiece> protected_paths;
  std::vector<std::vector<EdgeId>> blocks;
  std::optional<ScalingInfo> scaling;

  std::size_t size() const { return edges.size(); }
};

Solution make_solution(const Graph& g, EdgeSet edges);

}  // namespace snd
