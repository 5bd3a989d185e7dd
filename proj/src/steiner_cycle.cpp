#include "snd/steiner_cycle.hpp"

#include <algorithm>
#include <climits>
#include <mutex>

#include "snd/chains.hpp"
#include "snd/oracle.hpp"

namespace snd {

namespace {

class CycleSearch {
 public:
  CycleSearch(const ChainGraph& cg, const std::vector<char>& is_term, int start, bool existence_only)
      : cg_(cg),
        is_term_(is_term),
        start_(start),
        existence_only_(existence_only),
        visited_(static_cast<std::size_t>(cg.num_nodes()), 0) {
    term_count_ = static_cast<int>(std::count(is_term.begin(), is_term.end(), 1));
  }

  void run() {
    visited_[static_cast<std::size_t>(start_)] = 1;
    terms_seen_ = is_term_[static_cast<std::size_t>(start_)];
    if (term_count_ == 1) {
      for (int li : cg_.adjacency[static_cast<std::size_t>(start_)]) {
        const auto& link = cg_.links[static_cast<std::size_t>(li)];
        if (link.a == link.b) consider(link.length(), li);
      }
    }
    dfs(start_);
  }

  bool found() const { return best_len_ != INT_MAX; }
  const std::vector<EdgeId>& best_edges() const { return best_edges_; }

 private:
  void consider(int length, int closing) {
    std::vector<EdgeId> edges;
    for (int li : path_) {
      const auto& l = cg_.links[static_cast<std::size_t>(li)].edges;
      edges.insert(edges.end(), l.begin(), l.end());
    }
    const auto& l = cg_.links[static_cast<std::size_t>(closing)].edges;
    edges.insert(edges.end(), l.begin(), l.end());
    std::sort(edges.begin(), edges.end());
    if (length < best_len_ || (length == best_len_ && edges < best_edges_)) {
      best_len_ = length;
      best_edges_ = std::move(edges);
    }
  }

  // Every unvisited terminal and the start must stay reachable from `from`
  // through unvisited nodes.
  bool feasible_ahead(int from) {
    std::vector<char> seen(visited_.size(), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    int terms = 0;
    bool closes = false;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int li : cg_.adjacency[static_cast<std::size_t>(x)]) {
        const auto& link = cg_.links[static_cast<std::size_t>(li)];
        int y = link.a == x ? link.b : link.a;
        if (y == start_ && !(x == from && !path_.empty() && li == path_.back())) closes = true;
        if (visited_[static_cast<std::size_t>(y)] || seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = 1;
        terms += is_term_[static_cast<std::size_t>(y)];
        stack.push_back(y);
      }
    }
    return closes && terms == term_count_ - terms_seen_;
  }

  void dfs(int cur) {
    if ((++ticks_ & 0xFFF) == 0) DeadlineScope::poll();
    for (int li : cg_.adjacency[static_cast<std::size_t>(cur)]) {
      if (existence_only_ && found()) return;
      const auto& link = cg_.links[static_cast<std::size_t>(li)];
      if (link.a == link.b) continue;
      int nb = link.a == cur ? link.b : link.a;
      int new_len = len_ + link.length();
      if (nb == start_) {
        if (path_.empty() || li == path_.front() || path_.front() > li) continue;
        if (terms_seen_ == term_count_ && new_len <= best_len_) consider(new_len, li);
        continue;
      }
      if (visited_[static_cast<std::size_t>(nb)]) continue;
      int seen_after = terms_seen_ + is_term_[static_cast<std::size_t>(nb)];
      if (new_len + (term_count_ - seen_after) + 1 > best_len_) continue;

      visited_[static_cast<std::size_t>(nb)] = 1;
      path_.push_back(li);
      int saved_len = len_;
      int saved_terms = terms_seen_;
      len_ = new_len;
      terms_seen_ = seen_after;
      if (feasible_ahead(nb)) dfs(nb);
      len_ = saved_len;
      terms_seen_ = saved_terms;
      path_.pop_back();
      visited_[static_cast<std::size_t>(nb)] = 0;
    }
  }

  const ChainGraph& cg_;
  const std::vector<char>& is_term_;
  int start_;
  bool existence_only_;
  std::vector<char> visited_;
  std::vector<int> path_;
  int term_count_ = 0;
  int terms_seen_ = 0;
  int len_ = 0;
  int best_len_ = INT_MAX;
  std::vector<EdgeId> best_edges_;
  std::uint32_t ticks_ = 0;
};

std::optional<std::vector<EdgeId>> search_cycle(const Graph& g, const NodeSet& terminals, bool existence_only) {
  if (terminals.empty()) throw Error(ErrorCode::kInvalidArgument, "Steiner cycle needs at least one terminal");
  std::vector<char> keep(static_cast<std::size_t>(g.num_nodes()), 0);
  for (NodeId t : terminals) {
    if (t < 0 || t >= g.num_nodes()) throw Error(ErrorCode::kInvalidArgument, "terminal out of range");
    if (g.degree(t) < 2) return std::nullopt;
    keep[static_cast<std::size_t>(t)] = 1;
  }
  ChainGraph cg = compress_chains(g, keep);
  std::vector<char> is_term(static_cast<std::size_t>(cg.num_nodes()), 0);
  for (NodeId t : terminals) is_term[static_cast<std::size_t>(cg.from_original[static_cast<std::size_t>(t)])] = 1;
  int start = cg.from_original[static_cast<std::size_t>(terminals.front())];
  CycleSearch search(cg, is_term, start, existence_only);
  search.run();
  if (!search.found()) return std::nullopt;
  return search.best_edges();
}

std::mutex registry_mutex;
std::shared_ptr<CycleEngine> registry;

}  // namespace

std::optional<EdgeSet> ExhaustiveCycleEngine::find_cycle(const Graph& g, const NodeSet& terminals, double,
                                                         std::uint64_t) {
  auto edges = search_cycle(g, make_node_set(terminals), false);
  if (!edges) return std::nullopt;
  return EdgeSet(static_cast<std::size_t>(g.num_edges()), *edges);
}

bool ExhaustiveCycleEngine::has_cycle(const Graph& g, const NodeSet& terminals) {
  return search_cycle(g, make_node_set(terminals), true).has_value();
}

std::shared_ptr<CycleEngine> exhaustive_engine() {
  static auto engine = std::make_shared<ExhaustiveCycleEngine>();
  return engine;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (key + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void register_cycle_engine(std::shared_ptr<CycleEngine> engine) {
  if (!engine) throw Error(ErrorCode::kInvalidArgument, "null cycle engine");
  // Conformance: fixed seeds, small random graphs, compared with the oracle.
  for (std::uint64_t s = 1; s <= 24; ++s) {
    std::uint64_t state = derive_seed(0xC0FFEE, s);
    auto draw = [&](std::uint64_t bound) {
      state = derive_seed(state, bound);
      return state % bound;
    };
    NodeId n = 4 + static_cast<NodeId>(draw(4));
    Graph g(n);
    for (NodeId v = 1; v < n; ++v) g.add_edge(v, static_cast<NodeId>(draw(static_cast<std::uint64_t>(v))));
    int extra = 1 + static_cast<int>(draw(static_cast<std::uint64_t>(n)));
    for (int i = 0; i < extra; ++i) {
      NodeId a = static_cast<NodeId>(draw(static_cast<std::uint64_t>(n)));
      NodeId b = static_cast<NodeId>(draw(static_cast<std::uint64_t>(n)));
      if (a != b) g.add_edge(a, b);
    }
    NodeSet terms = make_node_set({static_cast<NodeId>(draw(static_cast<std::uint64_t>(n))),
                                   static_cast<NodeId>(draw(static_cast<std::uint64_t>(n)))});
    OracleProblem problem{OracleKind::kCycle, terms};
    auto expected = try_oracle_min_subgraph(g, problem, false);
    auto got = engine->find_cycle(g, terms, 1e-9, s);
    bool ok = expected.has_value() == got.has_value();
    if (ok && got) ok = got->size() == expected->edges.size() && oracle_feasible(g, *got, problem);
    if (!ok) throw Error(ErrorCode::kPluginRejected, "engine '" + engine->name() + "' disagrees with the oracle");
  }
  std::lock_guard lock(registry_mutex);
  registry = std::move(engine);
}

std::shared_ptr<CycleEngine> registered_engine() {
  std::lock_guard lock(registry_mutex);
  return registry;
}

void clear_registered_engine() {
  std::lock_guard lock(registry_mutex);
  registry.reset();
}

std::shared_ptr<CycleEngine> engine_for(const CycleSolverParams& params) {
  if (params.kind == CycleSolverKind::kExhaustive) return exhaustive_engine();
  auto engine = registered_engine();
  if (!engine) throw Error(ErrorCode::kInvalidArgument, "no plugin cycle engine registered");
  return engine;
}

std::optional<EdgeSet> find_steiner_cycle(CycleEngine& engine, const Graph& g, const NodeSet& terminals, double eta,
                                          std::uint64_t seed) {
  return engine.find_cycle(g, terminals, eta, seed);
}

std::optional<EdgeSet> find_steiner_path(CycleEngine& engine, const Graph& g, const NodeSet& terminals, NodeId s,
                                         NodeId t, double eta, std::uint64_t seed) {
  if (s == t) throw Error(ErrorCode::kInvalidArgument, "Steiner path endpoints must differ");
  if (s < 0 || t < 0 || s >= g.num_nodes() || t >= g.num_nodes()) {
    throw Error(ErrorCode::kInvalidArgument, "path endpoint out of range");
  }
  Graph aux = g;
  NodeId apex = aux.add_node();
  aux.add_edge(apex, s);
  aux.add_edge(apex, t);
  std::vector<NodeId> terms(terminals.begin(), terminals.end());
  terms.insert(terms.end(), {apex, s, t});
  auto cycle = engine.find_cycle(aux, make_node_set(std::move(terms)), eta, seed);
  if (!cycle) return std::nullopt;
  EdgeSet path(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e : cycle->ids()) {
    if (e < g.num_edges()) path.insert(e);
  }
  return path;
}

Solution min_steiner_cycle(const Graph& g, const NodeSet& terminals, const CycleSolverParams& params) {
  if (!(params.eta > 0.0 && params.eta <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta must lie in (0, 1]");
  auto engine = engine_for(params);
  auto cycle = engine->find_cycle(g, make_node_set(terminals), params.eta, params.seed);
  if (!cycle) throw Error(ErrorCode::kNoCycle, "no simple cycle contains all terminals");
  Solution sol = make_solution(g, std::move(*cycle));
  sol.stats.cycle_calls = 1;
  return sol;
}

Solution min_steiner_path(const Graph& g, const NodeSet& terminals, NodeId s, NodeId t,
                          const CycleSolverParams& params) {
  if (!(params.eta > 0.0 && params.eta <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta must lie in (0, 1]");
  auto engine = engine_for(params);
  auto path = find_steiner_path(*engine, g, make_node_set(terminals), s, t, params.eta, params.seed);
  if (!path) throw Error(ErrorCode::kNoPath, "no simple s,t-path contains all terminals");
  Solution sol = make_solution(g, std::move(*path));
  sol.stats.path_calls = 1;
  return sol;
}

std::vector<NodeId> cycle_node_order(const Graph& g, const EdgeSet& cycle) {
  auto ids = cycle.ids();
  if (ids.empty()) return {};
  NodeSet nodes = touched_nodes(g, cycle);
  NodeId start = nodes.front();
  std::vector<NodeId> order{start};
  std::vector<char> used(static_cast<std::size_t>(g.num_edges()), 0);
  NodeId cur = start;
  for (std::size_t step = 0; step < ids.size(); ++step) {
    EdgeId next = kNoEdge;
    for (EdgeId e : g.incident(cur)) {
      if (cycle.contains(e) && !used[static_cast<std::size_t>(e)]) {
        next = e;
        break;
      }
    }
    if (next == kNoEdge) break;
    used[static_cast<std::size_t>(next)] = 1;
    cur = g.edge(next).other(cur);
    order.push_back(cur);
  }
  return order;
}

}  // namespace snd
