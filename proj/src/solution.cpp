#include "snd/solution.hpp"

namespace snd {

void Deadline::check() const {
  if (expired()) throw Error(ErrorCode::kBudgetExceeded, "time limit reached");
}

namespace {
thread_local const Deadline* active_deadline = nullptr;
}  // namespace

DeadlineScope::DeadlineScope(const Deadline& deadline) : previous_(active_deadline) { active_deadline = &deadline; }
DeadlineScope::~DeadlineScope() { active_deadline = previous_; }

void DeadlineScope::poll() {
  if (active_deadline) active_deadline->check();
}

void SolveStats::merge(const SolveStats& other) {
  iterations += other.iterations;
  candidates += other.candidates;
  cycle_calls += other.cycle_calls;
  path_calls += other.path_calls;
  memo_hits += other.memo_hits;
  subsolver_calls += other.subsolver_calls;
  threshold_probes += other.threshold_probes;
}

Solution make_solution(const Graph& g, EdgeSet edges) {
  Solution s;
  s.cost = g.cost_of(edges);
  s.edges = std::move(edges);
  return s;
}

}  // namespace snd
