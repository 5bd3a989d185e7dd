#include "snd/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace snd {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Are all nodes flagged in `nodes` (except skip_node) in one component of
// the edges in `list` (except skip_edge and edges touching skip_node)?
bool spans(const Graph& g, const std::vector<char>& nodes, const std::vector<EdgeId>& list, EdgeId skip_edge,
           NodeId skip_node) {
  Dsu dsu(static_cast<std::size_t>(g.num_nodes()));
  for (EdgeId e : list) {
    if (e == skip_edge) continue;
    const Edge& ed = g.edge(e);
    if (ed.u == skip_node || ed.v == skip_node) continue;
    dsu.join(ed.u, ed.v);
  }
  int root = -1;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!nodes[static_cast<std::size_t>(v)] || v == skip_node) continue;
    int r = dsu.find(v);
    if (root == -1) root = r;
    if (r != root) return false;
  }
  return true;
}

bool feasible_list(const Graph& g, const std::vector<EdgeId>& list, const OracleProblem& p) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  std::vector<int> deg(n, 0);
  for (EdgeId e : list) {
    ++deg[static_cast<std::size_t>(g.edge(e).u)];
    ++deg[static_cast<std::size_t>(g.edge(e).v)];
  }
  std::vector<char> touched(n, 0);
  int touched_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] > 0) {
      touched[v] = 1;
      ++touched_count;
    }
  }
  auto covers_terminals = [&] {
    return std::all_of(p.terminals.begin(), p.terminals.end(),
                       [&](NodeId t) { return touched[static_cast<std::size_t>(t)] != 0; });
  };

  switch (p.kind) {
    case OracleKind::kCycle: {
      if (list.size() < 2 || !covers_terminals()) return false;
      for (std::size_t v = 0; v < n; ++v) {
        if (deg[v] != 0 && deg[v] != 2) return false;
      }
      return spans(g, touched, list, kNoEdge, kNoNode);
    }
    case OracleKind::kPath: {
      if (p.s == p.t || list.empty() || !covers_terminals()) return false;
      for (std::size_t v = 0; v < n; ++v) {
        auto x = static_cast<NodeId>(v);
        int want = (x == p.s || x == p.t) ? 1 : 2;
        if (deg[v] != 0 && deg[v] != want) return false;
      }
      if (deg[static_cast<std::size_t>(p.s)] != 1 || deg[static_cast<std::size_t>(p.t)] != 1) return false;
      return spans(g, touched, list, kNoEdge, kNoNode);
    }
    case OracleKind::k2ncs: {
      if (touched_count < 3 || !covers_terminals()) return false;
      if (!spans(g, touched, list, kNoEdge, kNoNode)) return false;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (touched[static_cast<std::size_t>(v)] && !spans(g, touched, list, kNoEdge, v)) return false;
      }
      return true;
    }
    case OracleKind::k2ecs: {
      if (touched_count < 2 || !covers_terminals()) return false;
      if (!spans(g, touched, list, kNoEdge, kNoNode)) return false;
      for (EdgeId e : list) {
        if (!spans(g, touched, list, e, kNoNode)) return false;
      }
      return true;
    }
    case OracleKind::kFst:
    case OracleKind::kProtectedPath: {
      std::vector<char> nodes = touched;
      if (p.kind == OracleKind::kFst) {
        for (NodeId t : p.terminals) nodes[static_cast<std::size_t>(t)] = 1;
      } else {
        nodes[static_cast<std::size_t>(p.s)] = 1;
        nodes[static_cast<std::size_t>(p.t)] = 1;
      }
      if (!spans(g, nodes, list, kNoEdge, kNoNode)) return false;
      for (EdgeId e : list) {
        if (!g.edge(e).safe() && !spans(g, nodes, list, e, kNoNode)) return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<EdgeId> mask_ids(std::uint64_t mask) {
  std::vector<EdgeId> ids;
  while (mask) {
    ids.push_back(static_cast<EdgeId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return ids;
}

void check_budget(const Graph& g, const OracleProblem& p, const OracleBudget& budget) {
  if (g.num_nodes() > budget.max_nodes || g.num_edges() > budget.max_edges || g.num_edges() > 62) {
    throw Error(ErrorCode::kBudgetExceeded, "instance exceeds the oracle budget (n=" + std::to_string(g.num_nodes()) +
                                                ", m=" + std::to_string(g.num_edges()) + ")");
  }
  for (NodeId t : p.terminals) {
    if (t < 0 || t >= g.num_nodes()) throw Error(ErrorCode::kInvalidArgument, "terminal out of range");
  }
  if (p.kind == OracleKind::kPath || p.kind == OracleKind::kProtectedPath) {
    if (p.s < 0 || p.t < 0 || p.s >= g.num_nodes() || p.t >= g.num_nodes()) {
      throw Error(ErrorCode::kInvalidArgument, "path endpoint out of range");
    }
  }
}

struct Clock {
  std::chrono::steady_clock::time_point end;
  std::uint64_t ticks = 0;
  explicit Clock(const OracleBudget& b) : end(std::chrono::steady_clock::now() + b.max_millis) {}
  void tick() {
    if ((++ticks & 0xFFFF) == 0 && std::chrono::steady_clock::now() > end) {
      throw Error(ErrorCode::kBudgetExceeded, "oracle time budget exhausted");
    }
  }
};

Cost mask_cost(const Graph& g, std::uint64_t mask) {
  Cost c = 0;
  for (EdgeId e : mask_ids(mask)) c += g.edge(e).cost;
  return c;
}

OracleResult make_result(const Graph& g, std::uint64_t mask, std::uint64_t checked) {
  auto ids = mask_ids(mask);
  OracleResult r;
  r.edges = EdgeSet(static_cast<std::size_t>(g.num_edges()), ids);
  r.cost = mask_cost(g, mask);
  r.subsets_checked = checked;
  return r;
}

}  // namespace

OracleKind oracle_kind(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kCycle: return OracleKind::kCycle;
    case ProblemKind::k2ncs: return OracleKind::k2ncs;
    case ProblemKind::k2ecs: return OracleKind::k2ecs;
    case ProblemKind::kFst: return OracleKind::kFst;
  }
  return OracleKind::kCycle;
}

bool oracle_feasible(const Graph& g, const EdgeSet& edges, const OracleProblem& problem) {
  return feasible_list(g, edges.ids(), problem);
}

std::optional<OracleResult> try_oracle_min_subgraph(const Graph& g, const OracleProblem& problem, bool weighted,
                                                    const OracleBudget& budget) {
  check_budget(g, problem, budget);
  Clock clock(budget);
  const int m = g.num_edges();
  std::uint64_t checked = 0;
  auto lex_smaller = [](std::uint64_t a, std::uint64_t b) { return mask_ids(a) < mask_ids(b); };

  if (weighted) {
    std::optional<std::uint64_t> best;
    Cost best_cost = 0;
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      clock.tick();
      ++checked;
      Cost c = mask_cost(g, mask);
      if (best && c > best_cost) continue;
      if (!feasible_list(g, mask_ids(mask), problem)) continue;
      if (!best || c < best_cost || lex_smaller(mask, *best)) {
        best = mask;
        best_cost = c;
      }
    }
    if (!best) return std::nullopt;
    return make_result(g, *best, checked);
  }

  for (int size = 0; size <= m; ++size) {
    std::optional<std::uint64_t> best;
    if (size == 0) {
      ++checked;
      if (feasible_list(g, {}, problem)) best = 0;
    } else {
      std::uint64_t mask = (std::uint64_t{1} << size) - 1;
      const std::uint64_t limit = std::uint64_t{1} << m;
      while (mask < limit) {
        clock.tick();
        ++checked;
        if (feasible_list(g, mask_ids(mask), problem) && (!best || lex_smaller(mask, *best))) best = mask;
        std::uint64_t low = mask & (~mask + 1);
        std::uint64_t ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
      }
    }
    if (best) return make_result(g, *best, checked);
  }
  return std::nullopt;
}

OracleResult oracle_min_subgraph(const Graph& g, const OracleProblem& problem, bool weighted,
                                 const OracleBudget& budget) {
  auto r = try_oracle_min_subgraph(g, problem, weighted, budget);
  if (!r) throw Error(ErrorCode::kInfeasible, "no feasible subgraph");
  return *r;
}

OracleResult oracle_min_subgraph(const Graph& g, const NodeSet& terminals, ProblemKind kind, bool weighted,
                                 const OracleBudget& budget) {
  return oracle_min_subgraph(g, OracleProblem{oracle_kind(kind), terminals}, weighted, budget);
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, const OracleProblem& p, bool weighted, const OracleBudget& budget)
      : g_(g), p_(p), weighted_(weighted), clock_(budget),
        deg_(static_cast<std::size_t>(g.num_nodes()), 0),
        last_(static_cast<std::size_t>(g.num_nodes()), -1),
        is_term_(static_cast<std::size_t>(g.num_nodes()), 0) {
    for (const Edge& e : g.edges()) {
      last_[static_cast<std::size_t>(e.u)] = std::max(last_[static_cast<std::size_t>(e.u)], e.id);
      last_[static_cast<std::size_t>(e.v)] = std::max(last_[static_cast<std::size_t>(e.v)], e.id);
    }
    for (NodeId t : p.terminals) is_term_[static_cast<std::size_t>(t)] = 1;
  }

  std::optional<OracleResult> run() {
    recurse(0, 0);
    if (!best_) return std::nullopt;
    return make_result(g_, *best_, leaves_);
  }

 private:
  Cost edge_cost(EdgeId e) const { return weighted_ ? g_.edge(e).cost : Cost(1); }

  // Node constraint once every incident edge is decided (final) or at any
  // time (partial, upper-bound violations only).
  bool node_ok(NodeId v, bool final) const {
    int d = deg_[static_cast<std::size_t>(v)];
    bool term = is_term_[static_cast<std::size_t>(v)] != 0;
    bool endpoint = v == p_.s || v == p_.t;
    switch (p_.kind) {
      case OracleKind::kCycle:
        if (d > 2) return false;
        return !final || (term ? d == 2 : (d == 0 || d == 2));
      case OracleKind::kPath:
        if (endpoint) return final ? d == 1 : d <= 1;
        if (d > 2) return false;
        return !final || (term ? d == 2 : (d == 0 || d == 2));
      case OracleKind::k2ncs:
      case OracleKind::k2ecs:
        return !final || (term ? d >= 2 : d != 1);
      case OracleKind::kFst:
        return !final || !term || p_.terminals.size() < 2 || d >= 1;
      case OracleKind::kProtectedPath:
        return true;
    }
    return true;
  }

  void recurse(int i, std::uint64_t mask) {
    clock_.tick();
    if (best_ && cost_ > best_cost_) return;
    if (i == g_.num_edges()) {
      ++leaves_;
      if (!feasible_list(g_, mask_ids(mask), p_)) return;
      if (!best_ || cost_ < best_cost_ || mask_ids(mask) < mask_ids(*best_)) {
        best_ = mask;
        best_cost_ = cost_;
      }
      return;
    }
    const Edge& e = g_.edge(i);
    for (int take = 1; take >= 0; --take) {
      if (take) {
        ++deg_[static_cast<std::size_t>(e.u)];
        ++deg_[static_cast<std::size_t>(e.v)];
        cost_ += edge_cost(i);
      }
      bool ok = true;
      for (NodeId x : {e.u, e.v}) {
        if (!node_ok(x, last_[static_cast<std::size_t>(x)] == i)) ok = false;
      }
      if (ok) recurse(i + 1, take ? mask | (std::uint64_t{1} << i) : mask);
      if (take) {
        --deg_[static_cast<std::size_t>(e.u)];
        --deg_[static_cast<std::size_t>(e.v)];
        cost_ -= edge_cost(i);
      }
    }
  }

  const Graph& g_;
  const OracleProblem& p_;
  bool weighted_;
  Clock clock_;
  std::vector<int> deg_;
  std::vector<EdgeId> last_;
  std::vector<char> is_term_;
  Cost cost_ = 0;
  std::optional<std::uint64_t> best_;
  Cost best_cost_ = 0;
  std::uint64_t leaves_ = 0;
};

}  // namespace

std::optional<OracleResult> oracle_branch_and_bound(const Graph& g, const OracleProblem& problem, bool weighted,
                                                    const OracleBudget& budget) {
  check_budget(g, problem, budget);
  // Terminals with no incident edge at all are decided up front.
  for (NodeId t : problem.terminals) {
    if (g.degree(t) == 0 && problem.kind != OracleKind::kFst && problem.kind != OracleKind::kProtectedPath) {
      return std::nullopt;
    }
  }
  return BranchAndBound(g, problem, weighted, budget).run();
}

}  // namespace snd
