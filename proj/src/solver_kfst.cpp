#include "snd/solver_kfst.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "snd/enumerate.hpp"
#include "snd/scaling.hpp"
#include "snd/solver_2nc.hpp"
#include "snd/steiner_cycle.hpp"

namespace snd {

FstInstance make_fst_instance(Graph g, const NodeSet& terminals) {
  FstInstance inst;
  inst.original_nodes = g.num_nodes();
  inst.original_edges = g.num_edges();
  inst.graph = std::move(g);
  inst.terminals = make_node_set(terminals);
  for (NodeId t : inst.terminals) {
    if (t < 0 || t >= inst.original_nodes) throw Error(ErrorCode::kInvalidArgument, "terminal out of range");
  }
  return inst;
}

FstInstance apply_pendant_gadget(const FstInstance& inst) {
  if (inst.modified) throw Error(ErrorCode::kAlreadyModified, "pendant gadget already applied");
  FstInstance out = inst;
  out.modified = true;
  std::vector<NodeId> new_terms;
  for (NodeId v : inst.terminals) {
    NodeId leaf = out.graph.add_node();
    EdgeId e = out.graph.add_edge(v, leaf, 1, Safety::kSafe);
    out.pendants.push_back({v, leaf, e});
    new_terms.push_back(leaf);
  }
  out.terminals = make_node_set(std::move(new_terms));
  return out;
}

Solution strip_pendant_gadget(const FstInstance& modified, const Solution& sol) {
  if (!modified.modified) throw Error(ErrorCode::kNotModified, "instance carries no pendant gadget");
  for (const auto& p : modified.pendants) {
    if (!sol.edges.contains(p.edge)) {
      throw Error(ErrorCode::kNotModified, "solution misses the pendant edge of terminal " + std::to_string(p.terminal));
    }
  }
  EdgeSet edges(static_cast<std::size_t>(modified.original_edges));
  for (EdgeId e : sol.edges.ids()) {
    if (e < modified.original_edges) edges.insert(e);
  }
  Cost cost = 0;
  for (EdgeId e : edges.ids()) cost += modified.graph.edge(e).cost;
  Solution out = sol;
  out.edges = std::move(edges);
  out.cost = cost;
  auto to_base = [&](NodeId v) {
    for (const auto& p : modified.pendants) {
      if (p.node == v) return p.terminal;
    }
    return v;
  };
  for (auto& piece : out.protected_paths) {
    piece.from = to_base(piece.from);
    piece.to = to_base(piece.to);
    std::erase_if(piece.edges, [&](EdgeId e) { return e >= modified.original_edges; });
  }
  return out;
}

AuxiliaryGraphK build_auxiliary_k(const ProtectedPathTable& table, const std::vector<NodeSet>& parts,
                                  const NodeSet& terminals) {
  AuxiliaryGraphK k;
  k.nodes = parts;
  for (NodeId t : terminals) k.nodes.push_back({t});
  const std::size_t n = k.nodes.size();
  k.cost.assign(n, std::vector<std::optional<std::size_t>>(n));
  k.path.assign(n, std::vector<std::vector<EdgeId>>(n));
  k.ends.assign(n, std::vector<std::pair<NodeId, NodeId>>(n, {kNoNode, kNoNode}));
  for (std::size_t i = 0; i < n; ++i) {
    k.cost[i][i] = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      std::optional<std::size_t> best;
      std::pair<NodeId, NodeId> ends{kNoNode, kNoNode};
      for (NodeId u : k.nodes[i]) {
        for (NodeId v : k.nodes[j]) {
          auto c = u == v ? std::optional<std::size_t>(0) : table.cost(u, v);
          if (c && (!best || *c < *best)) {
            best = c;
            ends = {u, v};
          }
        }
      }
      k.cost[i][j] = k.cost[j][i] = best;
      k.ends[i][j] = ends;
      k.ends[j][i] = {ends.second, ends.first};
      if (best && *best > 0) k.path[i][j] = k.path[j][i] = *table.path(ends.first, ends.second);
    }
  }
  return k;
}

MstJoin mst_join(const AuxiliaryGraphK& k) {
  MstJoin out;
  const std::size_t n = k.nodes.size();
  if (n == 0) return out;
  std::vector<char> in_tree(n, 0);
  std::vector<std::optional<std::size_t>> best(n);
  std::vector<std::size_t> link(n, 0);
  best[0] = 0;
  std::vector<EdgeId> edges;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t x = n;
    for (std::size_t y = 0; y < n; ++y) {
      if (!in_tree[y] && best[y] && (x == n || *best[y] < *best[x])) x = y;
    }
    if (x == n) throw Error(ErrorCode::kInfiniteMst, "auxiliary graph has no finite spanning tree");
    in_tree[x] = 1;
    if (round > 0) {
      std::size_t p = link[x];
      out.tree_cost += *k.cost[p][x];
      const auto& path = k.path[p][x];
      edges.insert(edges.end(), path.begin(), path.end());
      out.pieces.push_back({k.ends[p][x].first, k.ends[p][x].second, path});
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (in_tree[y] || !k.cost[x][y]) continue;
      if (!best[y] || *k.cost[x][y] < *best[y]) {
        best[y] = k.cost[x][y];
        link[y] = x;
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.edges = std::move(edges);
  return out;
}

namespace {

struct Best {
  std::mutex mu;
  EdgeSet edges;
  std::vector<ProtectedPiece> pieces;
  std::vector<std::vector<EdgeId>> blocks;
  std::vector<std::size_t> trace;
};

class FstSearch {
 public:
  FstSearch(const FstInstance& inst, const FstInstance& mod, const ProtectedPathTable& table,
            const SolverOptions& opts, Best& best)
      : inst_(inst), mod_(mod), table_(table), opts_(opts), best_(best) {
    inner_ = opts;
    inner_.mode = SearchMode::kFast;
    inner_.threads = 1;
    inner_.eta = opts.eta / static_cast<double>(std::max<std::size_t>(1, inst.terminals.size()));
  }

  // parts: deduplicated node sets (size >= 1).
  void evaluate(std::vector<NodeSet> parts) {
    if ((++stats.iterations & 0xFF) == 0) opts_.deadline.check();
    const auto m2 = static_cast<std::size_t>(mod_.graph.num_edges());
    EdgeSet h(m2);
    std::vector<std::vector<EdgeId>> blocks;
    for (const auto& x : parts) {
      if (x.size() < 2) continue;
      const EdgeSet* b = block(x);
      if (!b) return;
      for (EdgeId e : b->ids()) h.insert(e);
      blocks.push_back(b->ids());
    }
    AuxiliaryGraphK k = build_auxiliary_k(table_, parts, mod_.terminals);
    MstJoin join;
    try {
      join = mst_join(k);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInfiniteMst) return;
      throw;
    }
    for (EdgeId e : join.edges) h.insert(e);
    ++stats.candidates;
    {
      std::lock_guard lock(best_.mu);
      if (!size_lex_less(h, best_.edges)) return;
    }
    if (!fst_feasible(mod_.graph, h, mod_.terminals)) return;
    std::lock_guard lock(best_.mu);
    if (!size_lex_less(h, best_.edges)) return;
    best_.edges = std::move(h);
    best_.pieces = std::move(join.pieces);
    best_.blocks = std::move(blocks);
    best_.trace.push_back(best_.edges.size());
  }

  SolveStats stats;

 private:
  const EdgeSet* block(const NodeSet& x) {
    auto it = blocks_.find(x);
    if (it != blocks_.end()) {
      ++stats.memo_hits;
      return it->second ? &*it->second : nullptr;
    }
    ++stats.subsolver_calls;
    std::optional<EdgeSet> found;
    try {
      SolverOptions o = inner_;
      std::uint64_t key = 0;
      for (NodeId v : x) key = derive_seed(key, static_cast<std::uint64_t>(v));
      o.seed = derive_seed(opts_.seed, key);
      Solution s = solve_2ncs_unweighted(inst_.graph, x, o);
      stats.cycle_calls += s.stats.cycle_calls;
      stats.path_calls += s.stats.path_calls;
      found = std::move(s.edges);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasible) throw;
    }
    auto& slot = blocks_[x];
    slot = std::move(found);
    return slot ? &*slot : nullptr;
  }

  const FstInstance& inst_;
  const FstInstance& mod_;
  const ProtectedPathTable& table_;
  const SolverOptions& opts_;
  SolverOptions inner_;
  Best& best_;
  std::map<NodeSet, std::optional<EdgeSet>> blocks_;
};

// Families of distinct node sets, at most max_parts of them, total size at
// most max_total.
void collect_families(const std::vector<NodeSet>& subsets, std::size_t start, int max_parts, std::size_t budget,
                      std::vector<NodeSet>& current, std::vector<std::vector<NodeSet>>& out) {
  if (!current.empty()) out.push_back(current);
  if (static_cast<int>(current.size()) == max_parts) return;
  for (std::size_t i = start; i < subsets.size(); ++i) {
    if (subsets[i].size() > budget) continue;
    current.push_back(subsets[i]);
    collect_families(subsets, i + 1, max_parts, budget - subsets[i].size(), current, out);
    current.pop_back();
  }
}

}  // namespace

Solution solve_kfst_unweighted(const FstInstance& inst, const SolverOptions& opts) {
  if (inst.modified) throw Error(ErrorCode::kAlreadyModified, "pass the unmodified instance");
  if (!(opts.eta > 0.0 && opts.eta <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta must lie in (0, 1]");
  const Graph& g = inst.graph;
  const NodeSet& terminals = inst.terminals;
  const int k = static_cast<int>(terminals.size());
  if (!protection_feasible(g, terminals)) throw Error(ErrorCode::kInfeasible, "terminals are not 1-protected in G");
  if (k <= 1) return make_solution(g, g.empty_edges());

  FstInstance mod = apply_pendant_gadget(inst);
  NodeSet universe;
  for (NodeId v = 0; v < inst.original_nodes; ++v) {
    if (mod.graph.degree(v) >= 3) universe.push_back(v);
  }
  std::vector<NodeId> queries(universe.begin(), universe.end());
  queries.insert(queries.end(), mod.terminals.begin(), mod.terminals.end());
  ProtectedPathTable table(mod.graph, make_node_set(std::move(queries)));

  Best best;
  best.edges = mod.graph.all_edges();
  best.trace.push_back(best.edges.size());

  const int length = std::max(0, 3 * k - 6);
  const int max_parts = std::max(0, k - 2);
  const int threads = std::max(1, opts.threads);
  std::vector<SolveStats> stats(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));

  // Fast mode walks each distinct family of sets once; audit mode walks
  // tuples and their position partitions literally.
  std::vector<std::vector<NodeSet>> families;
  if (opts.mode == SearchMode::kFast) {
    std::vector<NodeSet> subsets;
    SubsetCursor cursor(universe, length);
    NodeSet s;
    while (cursor.next(s)) {
      if (!s.empty()) subsets.push_back(s);
    }
    std::vector<NodeSet> current;
    collect_families(subsets, 0, max_parts, static_cast<std::size_t>(length), current, families);
  }
  std::vector<NodeId> no_tuple;

  auto work = [&](int w) {
    DeadlineScope scope(opts.deadline);
    try {
      FstSearch search(inst, mod, table, opts, best);
      if (w == 0) search.evaluate({});  // terminals joined by protected paths alone
      if (opts.mode == SearchMode::kFast) {
        for (std::size_t i = static_cast<std::size_t>(w); i < families.size(); i += static_cast<std::size_t>(threads)) {
          search.evaluate(families[i]);
        }
      } else if (length > 0) {
        TupleCursor tuples(universe, length);
        std::vector<NodeId> tuple;
        std::size_t index = 0;
        while (tuples.next(tuple)) {
          if (index++ % static_cast<std::size_t>(threads) != static_cast<std::size_t>(w)) continue;
          SetPartitionCursor split(length, max_parts);
          std::vector<int> labels;
          while (split.next(labels)) {
            int r = *std::max_element(labels.begin(), labels.end()) + 1;
            std::vector<std::vector<NodeId>> parts(static_cast<std::size_t>(r));
            for (int i = 0; i < length; ++i) {
              parts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(
                  tuple[static_cast<std::size_t>(i)]);
            }
            std::vector<NodeSet> sets;
            for (auto& p : parts) sets.push_back(make_node_set(std::move(p)));
            search.evaluate(std::move(sets));
          }
        }
      }
      stats[static_cast<std::size_t>(w)] = search.stats;
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
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

  Solution sol = make_solution(mod.graph, best.edges);
  for (const auto& st : stats) sol.stats.merge(st);
  sol.stats.incumbent_trace = best.trace;
  sol.protected_paths = best.pieces;
  sol.blocks = best.blocks;
  return strip_pendant_gadget(mod, sol);
}

Solution solve_kfst_weighted(const FstInstance& inst, const Cost& epsilon, const SolverOptions& opts) {
  if (inst.modified) throw Error(ErrorCode::kAlreadyModified, "pass the unmodified instance");
  SolverOptions inner = opts;
  inner.eta = opts.eta / 2.0;
  const NodeSet& terminals = inst.terminals;
  ScaledProblem problem;
  // A minimal FST solution is a tree of safe bridges and minimal 2EC blocks:
  // at most 2(n - 1) edges.
  problem.solution_edge_bound = std::max(1, 2 * inst.graph.num_nodes() - 2);
  problem.probe = [&](const Graph& h) { return protection_feasible(h, terminals); };
  problem.solve_unit = [&](const Graph& unit) -> std::optional<Solution> {
    try {
      return solve_kfst_unweighted(make_fst_instance(unit, terminals), inner);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInfeasible) return std::nullopt;
      throw;
    }
  };
  return solve_scaled(inst.graph, epsilon, problem);
}

Solution solve_2ecs(const Graph& g, const NodeSet& terminals, std::optional<Cost> epsilon, const SolverOptions& opts) {
  FstInstance inst = make_fst_instance(with_safety(g, Safety::kUnsafe), terminals);
  Solution sol = epsilon ? solve_kfst_weighted(inst, *epsilon, opts) : solve_kfst_unweighted(inst, opts);
  sol.cost = g.cost_of(sol.edges);
  return sol;
}

}  // namespace snd
