#include "snd/scaling.hpp"

#include <algorithm>
#include <stdexcept>

#include "snd/steiner_cycle.hpp"

namespace snd {

namespace {

std::size_t node_budget(const Graph& g, const Cost& epsilon) {
  Cost n = g.num_nodes();
  Cost bound = Cost(g.num_edges()) * n * n / epsilon;
  auto whole = boost::multiprecision::numerator(bound) / boost::multiprecision::denominator(bound);
  return static_cast<std::size_t>(g.num_nodes()) + whole.convert_to<std::size_t>();
}

}  // namespace

Graph restrict_edges(const Graph& g, const std::vector<EdgeId>& edges, std::vector<EdgeId>* kept) {
  Graph h(g.num_nodes());
  if (kept) kept->clear();
  for (EdgeId id : edges) {
    const Edge& e = g.edge(id);
    h.add_edge(e.u, e.v, e.cost, e.safety);
    if (kept) kept->push_back(id);
  }
  return h;
}

std::optional<Threshold> find_threshold(const Graph& g, const PrefixProbe& probe, SolveStats* stats) {
  Threshold th;
  th.order.resize(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) th.order[static_cast<std::size_t>(e)] = e;
  std::stable_sort(th.order.begin(), th.order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).cost < g.edge(b).cost; });
  std::vector<EdgeId> prefix;
  for (std::size_t j = 0; j < th.order.size(); ++j) {
    prefix.push_back(th.order[j]);
    if (stats) ++stats->threshold_probes;
    if (probe(restrict_edges(g, prefix))) {
      th.index = j + 1;
      th.beta = g.edge(th.order[j]).cost;
      return th;
    }
  }
  return std::nullopt;
}

ScalingGadget subdivide(const Graph& g, const Cost& beta, const Cost& mu, const Cost& discard_above) {
  if (mu <= 0) throw Error(ErrorCode::kInvalidArgument, "scaling parameter must be positive");
  ScalingGadget gd;
  gd.beta = beta;
  gd.mu = mu;
  gd.discard_above = discard_above;
  gd.rounded_costs.assign(static_cast<std::size_t>(g.num_edges()), std::nullopt);
  gd.units.assign(static_cast<std::size_t>(g.num_edges()), 0);
  gd.subdivided = Graph(g.num_nodes());
  for (const Edge& e : g.edges()) {
    if (e.cost > discard_above) continue;
    auto steps = ceil_to_int(e.cost / mu);
    if (steps < 1) steps = 1;
    auto count = steps.convert_to<std::int64_t>();
    gd.units[static_cast<std::size_t>(e.id)] = count;
    gd.rounded_costs[static_cast<std::size_t>(e.id)] = mu * Cost(steps);
    NodeId prev = e.u;
    for (std::int64_t i = 0; i < count; ++i) {
      NodeId next = i + 1 == count ? e.v : gd.subdivided.add_node();
      gd.subdivided.add_edge(prev, next, 1, e.safety);
      gd.edge_origin_map.push_back(e.id);
      prev = next;
    }
  }
  return gd;
}

ScalingGadget build_scaling_gadget(const Graph& g, const Cost& epsilon, const PrefixProbe& probe,
                                   int solution_edge_bound, SolveStats* stats) {
  if (epsilon <= 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  auto th = find_threshold(g, probe, stats);
  if (!th) throw Error(ErrorCode::kInfeasible, "the full graph holds no feasible solution");
  if (th->beta == 0) {
    throw Error(ErrorCode::kInvalidArgument, "zero threshold cost: solve the zero-cost subgraph directly");
  }
  Cost n = g.num_nodes();
  Cost bound = std::max(solution_edge_bound, g.num_nodes());
  ScalingGadget gd = subdivide(g, th->beta, epsilon * th->beta * bound / (n * n), bound * th->beta);
  if (stats) {
    stats->gadget_nodes = std::max<std::uint64_t>(stats->gadget_nodes,
                                                  static_cast<std::uint64_t>(gd.subdivided.num_nodes()));
  }
  return gd;
}

EdgeSet map_back(const ScalingGadget& gadget, const Graph& g, const EdgeSet& unit_edges) {
  std::vector<std::int64_t> hits(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : unit_edges.ids()) ++hits[static_cast<std::size_t>(gadget.edge_origin_map[static_cast<std::size_t>(e)])];
  EdgeSet out(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto h = hits[static_cast<std::size_t>(e)];
    if (h == 0) continue;
    if (h != gadget.units[static_cast<std::size_t>(e)]) {
      throw std::logic_error("subdivision path of edge " + std::to_string(e) + " is partially selected");
    }
    out.insert(e);
  }
  return out;
}

Solution solve_scaled(const Graph& g, const Cost& epsilon, const ScaledProblem& problem) {
  if (epsilon <= 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  SolveStats stats;
  auto th = find_threshold(g, problem.probe, &stats);
  if (!th) throw Error(ErrorCode::kInfeasible, "the full graph holds no feasible solution");

  ScalingInfo info;
  info.beta = th->beta;
  info.node_budget = node_budget(g, epsilon);

  if (th->beta == 0) {
    // A zero-cost solution exists: any feasible subgraph of the zero-cost
    // edges is optimal.
    std::vector<EdgeId> zero;
    for (const Edge& e : g.edges()) {
      if (e.cost == 0) zero.push_back(e.id);
    }
    std::vector<EdgeId> kept;
    Graph h = restrict_edges(g, zero, &kept);
    auto sol = problem.solve_unit(with_unit_costs(h));
    if (!sol) throw Error(ErrorCode::kInfeasible, "no solution on the zero-cost subgraph");
    EdgeSet edges(static_cast<std::size_t>(g.num_edges()));
    for (EdgeId e : sol->edges.ids()) edges.insert(kept[static_cast<std::size_t>(e)]);
    Solution out = make_solution(g, std::move(edges));
    out.exact = true;
    out.stats = sol->stats;
    out.stats.threshold_probes += stats.threshold_probes;
    info.lower_bound = 0;
    out.scaling = info;
    return out;
  }

  const Cost n = g.num_nodes();
  const int l_int = std::max(problem.solution_edge_bound, g.num_nodes());
  const Cost l = l_int;

  auto run_pass = [&](const Cost& mu, const Cost& discard) {
    ScalingGadget gd = subdivide(g, th->beta, mu, discard);
    info.gadget_nodes = std::max(info.gadget_nodes, static_cast<std::size_t>(gd.subdivided.num_nodes()));
    ++info.passes;
    info.mu = mu;
    auto sol = problem.solve_unit(gd.subdivided);
    if (!sol) throw Error(ErrorCode::kInfeasible, "unweighted solve on the subdivided graph found nothing");
    stats.merge(sol->stats);
    return make_solution(g, map_back(gd, g, sol->edges));
  };

  Solution best = run_pass(epsilon * th->beta * l / (n * n), l * th->beta);
  info.lower_bound = th->beta;
  if (l_int > g.num_nodes()) {
    // First pass error is at most |OPT| mu <= eps L^2 / n^2 * beta <= eps
    // L^2 / n^2 * OPT, so its cost certifies a lower bound on OPT.
    Cost lb = std::max(th->beta, Cost(best.cost / (1 + epsilon * l * l / (n * n))));
    info.lower_bound = lb;
    Solution second = run_pass(epsilon * lb / l, best.cost);
    if (second.cost < best.cost || (second.cost == best.cost && size_lex_less(second.edges, best.edges))) {
      best = std::move(second);
    }
  }
  best.exact = false;
  stats.gadget_nodes = info.gadget_nodes;
  best.stats = std::move(stats);
  best.scaling = info;
  return best;
}

Solution weighted_steiner_cycle(const Graph& g, const NodeSet& terminals, const Cost& epsilon, double eta,
                                std::uint64_t seed, std::shared_ptr<CycleEngine> engine) {
  if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta must lie in (0, 1]");
  NodeSet terms = make_node_set(terminals);
  if (!engine) engine = exhaustive_engine();
  const double half = eta / 2.0;
  std::uint64_t probe_key = 0;
  ScaledProblem problem;
  problem.solution_edge_bound = g.num_nodes();
  problem.probe = [&](const Graph& h) {
    if (dynamic_cast<ExhaustiveCycleEngine*>(engine.get())) return ExhaustiveCycleEngine::has_cycle(h, terms);
    return engine->find_cycle(h, terms, half, derive_seed(seed, ++probe_key)).has_value();
  };
  problem.solve_unit = [&](const Graph& unit) -> std::optional<Solution> {
    auto cycle = engine->find_cycle(unit, terms, half, derive_seed(seed, 0));
    if (!cycle) return std::nullopt;
    Solution s = make_solution(unit, std::move(*cycle));
    s.stats.cycle_calls = 1;
    return s;
  };
  return solve_scaled(g, epsilon, problem);
}

}  // namespace snd
