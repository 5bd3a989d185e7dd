#include "snd/solver_2nc.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "snd/scaling.hpp"
#include "snd/steiner_cycle.hpp"
#include "snd/structure.hpp"

namespace snd {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<NodeId>& key) const {
    std::size_t h = key.size();
    for (NodeId v : key) h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

std::uint64_t key_seed(std::uint64_t seed, const std::vector<NodeId>& key) { return derive_seed(seed, KeyHash{}(key)); }

// Shared minimum register: (size, lexicographic) order, so the final value
// does not depend on which worker offers first.
class Incumbent {
 public:
  explicit Incumbent(std::size_t initial) : best_size_(initial) { trace_.push_back(initial); }

  std::size_t size() const { return best_size_.load(std::memory_order_relaxed); }
  bool stopped() const { return stop_.load(std::memory_order_relaxed); }
  void stop() { stop_.store(true, std::memory_order_relaxed); }

  bool improves(const EdgeSet& h) {
    std::lock_guard lock(mu_);
    return best_ ? size_lex_less(h, *best_) : h.size() <= best_size_;
  }

  void offer(EdgeSet h) {
    std::lock_guard lock(mu_);
    if (best_ ? !size_lex_less(h, *best_) : h.size() > best_size_) return;
    best_size_.store(h.size(), std::memory_order_relaxed);
    best_ = std::move(h);
    trace_.push_back(best_->size());
  }

  const std::optional<EdgeSet>& best() const { return best_; }
  const std::vector<std::size_t>& trace() const { return trace_; }

 private:
  std::mutex mu_;
  std::atomic<std::size_t> best_size_;
  std::atomic<bool> stop_{false};
  std::optional<EdgeSet> best_;
  std::vector<std::size_t> trace_;
};

class MarkerSearch {
 public:
  MarkerSearch(const Graph& g, const NodeSet& terminals, const SolverOptions& opts, CycleEngine& engine,
               Incumbent& incumbent, std::size_t floor)
      : g_(g), terminals_(terminals), opts_(opts), engine_(engine), incumbent_(incumbent), floor_(floor) {
    k_ = static_cast<int>(terminals.size());
    eta_call_ = opts.eta / static_cast<double>(k_);
  }

  void run_subset(const NodeSet& s) {
    const bool fast = opts_.mode == SearchMode::kFast;
    if (fast) {
      std::size_t bound = terminals_.size() + s.size() + (s.size() + 1) / 2;
      if (bound > incumbent_.size()) return;
    }
    std::vector<NodeId> ground(terminals_.begin(), terminals_.end());
    ground.insert(ground.end(), s.begin(), s.end());
    OrderedPartitionCursor cursor(ground, k_, 2);
    OrderedPartition part;
    while (cursor.next(part)) {
      if (incumbent_.stopped()) return;
      if ((++ticks_ & 0x3FF) == 0) opts_.deadline.check();
      if (fast) {
        run_partition_fast(part);
      } else {
        run_partition_audit(part);
      }
    }
  }

  SolveStats stats;

 private:
  const EdgeSet* cycle(const NodeSet& part) {
    auto it = cycles_.find(part);
    if (it != cycles_.end()) {
      ++stats.memo_hits;
      return it->second ? &*it->second : nullptr;
    }
    ++stats.cycle_calls;
    auto c = find_steiner_cycle(engine_, g_, part, eta_call_, key_seed(opts_.seed, part));
    auto& slot = cycles_[part];
    slot = std::move(c);
    return slot ? &*slot : nullptr;
  }

  const EdgeSet* path(NodeId s, NodeId t, const NodeSet& part) {
    std::vector<NodeId> key{std::min(s, t), std::max(s, t)};
    key.insert(key.end(), part.begin(), part.end());
    auto it = paths_.find(key);
    if (it != paths_.end()) {
      ++stats.memo_hits;
      return it->second ? &*it->second : nullptr;
    }
    ++stats.path_calls;
    auto p = find_steiner_path(engine_, g_, part, key[0], key[1], eta_call_, key_seed(opts_.seed, key));
    auto& slot = paths_[key];
    slot = std::move(p);
    return slot ? &*slot : nullptr;
  }

  static std::vector<std::vector<std::pair<NodeId, NodeId>>> anchor_lists(const OrderedPartition& part) {
    std::vector<std::vector<std::pair<NodeId, NodeId>>> lists;
    for (int i = 1; i < part.r(); ++i) {
      std::vector<NodeSet> earlier(part.parts.begin(), part.parts.begin() + i);
      lists.push_back(anchor_pairs(earlier));
    }
    return lists;
  }

  void consider(EdgeSet h) {
    ++stats.candidates;
    if (h.size() > incumbent_.size() || !incumbent_.improves(h)) return;
    // Subcall contracts make H feasible; checked anyway before acceptance.
    if (!is_2nc(g_, h)) return;
    NodeSet nodes = touched_nodes(g_, h);
    for (NodeId t : terminals_) {
      if (!contains(nodes, t)) return;
    }
    incumbent_.offer(std::move(h));
    if (opts_.mode == SearchMode::kFast && incumbent_.size() <= floor_) incumbent_.stop();
  }

  // Literal loop: every anchor combination is an iteration, failed
  // subcalls included.
  void run_partition_audit(const OrderedPartition& part) {
    auto lists = anchor_lists(part);
    std::vector<std::size_t> idx(lists.size(), 0);
    while (true) {
      ++stats.iterations;
      const EdgeSet* c = cycle(part.parts[0]);
      bool ok = c != nullptr;
      EdgeSet h = ok ? *c : EdgeSet();
      for (std::size_t i = 0; ok && i < lists.size(); ++i) {
        auto [s, t] = lists[i][idx[i]];
        const EdgeSet* p = path(s, t, part.parts[i + 1]);
        if (!p) {
          ok = false;
        } else {
          h |= *p;
        }
      }
      if (ok) consider(std::move(h));

      std::size_t pos = lists.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < lists[pos].size()) break;
        idx[pos] = 0;
        if (pos == 0) return;
      }
      if (lists.empty()) return;
    }
  }

  // Markers of parts[from..] not yet touched by h.
  std::size_t missing_markers(const OrderedPartition& part, int from, const EdgeSet& h) const {
    NodeSet nodes = touched_nodes(g_, h);
    std::size_t missing = 0;
    for (int i = from; i < part.r(); ++i) {
      for (NodeId v : part.parts[static_cast<std::size_t>(i)]) {
        if (!contains(nodes, v)) ++missing;
      }
    }
    return missing;
  }

  // Every marker ends up in V(H) and H is 2NC, so R untouched markers cost
  // at least R + 1 further edges.
  bool hopeless(const OrderedPartition& part, int from, const EdgeSet& h) const {
    std::size_t r = missing_markers(part, from, h);
    return h.size() + r + (r > 0 ? 1 : 0) > incumbent_.size();
  }

  void run_partition_fast(const OrderedPartition& part) {
    const EdgeSet* c = cycle(part.parts[0]);
    if (!c || hopeless(part, 1, *c)) return;
    auto lists = anchor_lists(part);
    std::vector<std::unordered_set<EdgeSet, EdgeSetHash>> seen(lists.size() + 1);
    descend(part, lists, seen, 1, *c);
  }

  void descend(const OrderedPartition& part, const std::vector<std::vector<std::pair<NodeId, NodeId>>>& lists,
               std::vector<std::unordered_set<EdgeSet, EdgeSetHash>>& seen, int level, const EdgeSet& h) {
    if (incumbent_.stopped()) return;
    if (level == part.r()) {
      ++stats.iterations;
      consider(h);
      return;
    }
    for (auto [s, t] : lists[static_cast<std::size_t>(level - 1)]) {
      if (s > t) continue;  // paths are memoized per unordered pair
      const EdgeSet* p = path(s, t, part.parts[static_cast<std::size_t>(level)]);
      if (!p) continue;
      EdgeSet next = h | *p;
      if (hopeless(part, level + 1, next)) continue;
      if (!seen[static_cast<std::size_t>(level)].insert(next).second) continue;
      descend(part, lists, seen, level + 1, next);
    }
  }

  const Graph& g_;
  const NodeSet& terminals_;
  const SolverOptions& opts_;
  CycleEngine& engine_;
  Incumbent& incumbent_;
  std::size_t floor_;
  int k_ = 0;
  double eta_call_ = 0;
  std::uint64_t ticks_ = 0;
  std::unordered_map<std::vector<NodeId>, std::optional<EdgeSet>, KeyHash> cycles_;
  std::unordered_map<std::vector<NodeId>, std::optional<EdgeSet>, KeyHash> paths_;
};

void check_terminals(const Graph& g, const NodeSet& terminals) {
  for (NodeId t : terminals) {
    if (t < 0 || t >= g.num_nodes()) throw Error(ErrorCode::kInvalidArgument, "terminal out of range");
  }
}

}  // namespace

bool terminals_share_2nc_block(const Graph& g, const NodeSet& terminals) {
  if (terminals.empty()) return false;
  auto dec = blocks_and_cuts(g);
  for (const auto& b : dec.blocks) {
    if (!b.is_two_node_connected()) continue;
    if (std::all_of(terminals.begin(), terminals.end(), [&](NodeId t) { return contains(b.nodes, t); })) {
      return true;
    }
  }
  return false;
}

int max_marker_count(int k, MarkerBound bound) {
  return bound == MarkerBound::kTwoK ? 2 * k : std::max(0, 2 * k - 4);
}

Solution assemble_candidate(const Graph& g, const MarkerConfiguration& cfg, const SolverOptions& opts) {
  const auto& parts = cfg.partition.parts;
  if (parts.empty() || parts[0].size() < 2) throw Error(ErrorCode::kInvalidArgument, "first part needs two markers");
  if (cfg.anchors.size() + 1 != parts.size()) throw Error(ErrorCode::kInvalidArgument, "one anchor pair per path ear");
  auto engine = opts.engine ? opts.engine : exhaustive_engine();
  const double eta = opts.eta / static_cast<double>(std::max<std::size_t>(1, parts.size()));
  Solution sol;
  auto c = find_steiner_cycle(*engine, g, parts[0], eta, derive_seed(opts.seed, 0));
  if (!c) throw Error(ErrorCode::kSubcallFailed, "no Steiner cycle through the first part");
  ++sol.stats.cycle_calls;
  EdgeSet h = *c;
  for (std::size_t i = 0; i < cfg.anchors.size(); ++i) {
    auto [s, t] = cfg.anchors[i];
    NodeSet pool;
    for (std::size_t j = 0; j <= i; ++j) pool.insert(pool.end(), parts[j].begin(), parts[j].end());
    pool = make_node_set(std::move(pool));
    if (s == t || !contains(pool, s) || !contains(pool, t)) {
      throw Error(ErrorCode::kInvalidArgument, "anchor pair must come from earlier parts");
    }
    auto p = find_steiner_path(*engine, g, parts[i + 1], s, t, eta, derive_seed(opts.seed, i + 1));
    if (!p) throw Error(ErrorCode::kSubcallFailed, "no Steiner path for ear " + std::to_string(i + 1));
    ++sol.stats.path_calls;
    h |= *p;
  }
  SolveStats stats = sol.stats;
  sol = make_solution(g, std::move(h));
  sol.stats = stats;
  return sol;
}

Solution solve_2ncs_unweighted(const Graph& g, const NodeSet& terminals_in, const SolverOptions& opts) {
  NodeSet terminals = make_node_set(terminals_in);
  check_terminals(g, terminals);
  if (terminals.size() < 2) throw Error(ErrorCode::kInvalidArgument, "at least two terminals required");
  if (!(opts.eta > 0.0 && opts.eta <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta must lie in (0, 1]");

  std::vector<EdgeId> kept;
  Graph simple = simple_graph(g, kept);
  if (!terminals_share_2nc_block(simple, terminals)) {
    throw Error(ErrorCode::kInfeasible, "terminals do not share a 2NC block");
  }
  auto engine = opts.engine ? opts.engine : exhaustive_engine();
  const int k = static_cast<int>(terminals.size());

  NodeSet universe;
  for (NodeId v : degree3_nodes(simple)) {
    if (!contains(terminals, v)) universe.push_back(v);
  }
  std::vector<NodeSet> subsets;
  SubsetCursor cursor(universe, max_marker_count(k, opts.marker_bound));
  NodeSet s;
  while (cursor.next(s)) subsets.push_back(s);

  Incumbent incumbent(static_cast<std::size_t>(g.num_edges()));
  const std::size_t floor = std::max<std::size_t>(3, terminals.size());
  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(subsets.size())));
  std::vector<SolveStats> stats(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));

  auto work = [&](int w) {
    DeadlineScope scope(opts.deadline);
    try {
      MarkerSearch search(simple, terminals, opts, *engine, incumbent, floor);
      for (std::size_t i = static_cast<std::size_t>(w); i < subsets.size(); i += static_cast<std::size_t>(threads)) {
        if (incumbent.stopped()) break;
        search.run_subset(subsets[i]);
      }
      stats[static_cast<std::size_t>(w)] = search.stats;
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
      incumbent.stop();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (!incumbent.best()) throw Error(ErrorCode::kInfeasible, "no feasible candidate found");
  EdgeSet edges(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e : incumbent.best()->ids()) edges.insert(kept[static_cast<std::size_t>(e)]);
  Solution sol = make_solution(g, std::move(edges));
  for (const auto& st : stats) sol.stats.merge(st);
  sol.stats.incumbent_trace = incumbent.trace();
  return sol;
}

Solution solve_2ncs_weighted(const Graph& g, const NodeSet& terminals_in, const Cost& epsilon,
                             const SolverOptions& opts) {
  NodeSet terminals = make_node_set(terminals_in);
  check_terminals(g, terminals);
  if (terminals.size() < 2) throw Error(ErrorCode::kInvalidArgument, "at least two terminals required");
  SolverOptions inner = opts;
  inner.eta = opts.eta / 2.0;
  ScaledProblem problem;
  // A minimal 2NC graph on n >= 4 nodes has at most 2n - 4 edges.
  problem.solution_edge_bound = std::max(3, 2 * g.num_nodes() - 4);
  problem.probe = [&](const Graph& h) {
    std::vector<EdgeId> kept;
    return terminals_share_2nc_block(simple_graph(h, kept), terminals);
  };
  problem.solve_unit = [&](const Graph& unit) -> std::optional<Solution> {
    try {
      return solve_2ncs_unweighted(unit, terminals, inner);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInfeasible) return std::nullopt;
      throw;
    }
  };
  return solve_scaled(g, epsilon, problem);
}

}  // namespace snd
