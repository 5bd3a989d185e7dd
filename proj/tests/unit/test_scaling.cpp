#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "snd/oracle.hpp"
#include "snd/scaling.hpp"
#include "snd/solver_2nc.hpp"
#include "snd/steiner_cycle.hpp"
#include "snd/structure.hpp"

using namespace snd;
using namespace snd::test;

namespace {

PrefixProbe cycle_probe(NodeSet t) {
  return [t](const Graph& r) { return ExhaustiveCycleEngine::has_cycle(r, t); };
}

}  // namespace

TEST_CASE("unit costs with epsilon one") {
  const int n = 5;
  Graph g = cycle_graph(n);
  auto gadget = build_scaling_gadget(g, Cost(1), cycle_probe({0, 1, 2, 3, 4}), n);
  CHECK(gadget.beta == 1);
  CHECK(gadget.mu == Cost(1, n));
  for (auto u : gadget.units) CHECK(u == n);
  CHECK(gadget.subdivided.num_nodes() == n + n * (n - 1));
  CHECK(gadget.subdivided.num_edges() == n * n);
}

TEST_CASE("zero-cost edges become one unit edge") {
  Graph g(3);
  g.add_edge(0, 1, 0, Safety::kSafe);
  g.add_edge(1, 2, 4);
  g.add_edge(2, 0, 9);
  auto gadget = subdivide(g, Cost(4), Cost(1, 2), Cost(8));
  CHECK(gadget.units[0] == 1);
  CHECK(*gadget.rounded_costs[0] == Cost(1, 2));
  CHECK(gadget.units[1] == 8);
  CHECK(gadget.units[2] == 0);  // discarded
  CHECK_FALSE(gadget.rounded_costs[2].has_value());
  for (EdgeId e = 0; e < gadget.subdivided.num_edges(); ++e) {
    EdgeId origin = gadget.edge_origin_map[static_cast<std::size_t>(e)];
    CHECK(gadget.subdivided.edge(e).safety == g.edge(origin).safety);
  }
}

TEST_CASE("map back") {
  Graph g = cycle_graph(3);
  auto gadget = subdivide(g, Cost(1), Cost(1, 2), Cost(10));
  EdgeSet all = gadget.subdivided.all_edges();
  CHECK(map_back(gadget, g, all) == g.all_edges());
  EdgeSet partial = gadget.subdivided.empty_edges();
  partial.insert(0);
  CHECK_THROWS_AS(map_back(gadget, g, partial), std::logic_error);
}

TEST_CASE("gadget node count stays within the bound") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 40; ++round) {
    int n = 4 + static_cast<int>(rng() % 4);
    Graph g = random_graph(rng, n, n + 4, 1.0, 50);
    for (Cost eps : {Cost(1, 2), Cost(1, 10)}) {
      Solution sol;
      try {
        sol = weighted_steiner_cycle(g, {0, 1}, eps, 0.01, 1);
      } catch (const Error&) {
        continue;
      }
      Cost budget = Cost(n) + Cost(g.num_edges()) * n * n / eps;
      CHECK(Cost(static_cast<long long>(sol.stats.gadget_nodes)) <= budget);
    }
  }
}

TEST_CASE("weighted Steiner cycle") {
  Graph tri = cycle_graph(3);
  CHECK(weighted_steiner_cycle(tri, {0, 1, 2}, Cost(1, 2), 0.01, 1).cost == 3);

  Graph sq(4);
  sq.add_edge(0, 1, 3);
  sq.add_edge(1, 2, 7);
  sq.add_edge(2, 3, 2);
  sq.add_edge(3, 0, 5);
  sq.add_edge(0, 2, 4);
  auto got = weighted_steiner_cycle(sq, {0, 1, 2}, Cost(1, 10), 0.01, 1);
  auto best = oracle_min_subgraph(sq, {0, 1, 2}, ProblemKind::kCycle, true);
  CHECK(got.cost <= Cost(11, 10) * best.cost);

  Graph single(2);
  single.add_edge(0, 1, 5);
  CHECK_THROWS_AS(weighted_steiner_cycle(single, {0, 1}, Cost(1, 10), 0.01, 1), Error);
}

TEST_CASE("weighted 2NCS") {
  Graph tri = cycle_graph(3);
  CHECK(solve_2ncs_weighted(tri, {0, 1, 2}, Cost(1, 2)).cost == 3);

  // Unit costs reproduce the unweighted answer.
  Graph k4 = complete_graph(4);
  CHECK(solve_2ncs_weighted(k4, {0, 1, 2, 3}, Cost(1, 10)).cost == solve_2ncs_unweighted(k4, {0, 1, 2, 3}).cost);

  std::mt19937_64 rng(8);
  for (int round = 0; round < 15; ++round) {
    GeneratorSpec spec;
    spec.n = 6 + static_cast<int>(rng() % 2);
    spec.m = spec.n + 3;
    spec.k = 3;
    spec.weighted = true;
    spec.seed = rng();
    Instance inst = generate_instance(spec);
    auto best = oracle_min_subgraph(inst.graph, inst.terminals, ProblemKind::k2ncs, true);
    auto got = solve_2ncs_weighted(inst.graph, inst.terminals, Cost(1, 10), {.mode = SearchMode::kFast});
    CHECK(got.cost <= Cost(11, 10) * best.cost);
    CHECK(is_2nc(inst.graph, got.edges));
  }

  Graph zero(4);
  zero.add_edge(0, 1, 0);
  zero.add_edge(1, 2, 0);
  zero.add_edge(2, 0, 0);
  zero.add_edge(2, 3, 5);
  zero.add_edge(3, 0, 5);
  auto z = solve_2ncs_weighted(zero, {0, 1, 2}, Cost(1, 10));
  CHECK(z.cost == 0);
  CHECK(z.exact);
}
