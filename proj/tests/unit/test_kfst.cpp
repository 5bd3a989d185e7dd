#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "snd/oracle.hpp"
#include "snd/protected_path.hpp"
#include "snd/solver_kfst.hpp"
#include "snd/structure.hpp"

using namespace snd;
using namespace snd::test;

TEST_CASE("pendant gadget") {
  FstInstance base = make_fst_instance(cycle_graph(5), {0, 2, 4});
  FstInstance mod = apply_pendant_gadget(base);
  CHECK(mod.graph.num_nodes() == 8);
  CHECK(mod.graph.num_edges() == 8);
  for (const auto& p : mod.pendants) CHECK(mod.graph.edge(p.edge).safe());
  CHECK_THROWS_AS(apply_pendant_gadget(mod), Error);
  CHECK_THROWS_AS(strip_pendant_gadget(base, Solution{}), Error);

  Solution with = make_solution(mod.graph, mod.graph.all_edges());
  Solution without = strip_pendant_gadget(mod, with);
  CHECK(with.size() - without.size() == 3);
  CHECK(with.cost - without.cost == 3);

  EdgeSet missing = mod.graph.all_edges();
  missing.erase(mod.pendants[1].edge);
  CHECK_THROWS_AS(strip_pendant_gadget(mod, make_solution(mod.graph, missing)), Error);
}

TEST_CASE("protected path hand examples") {
  Graph safe(2);
  safe.add_edge(0, 1, 1, Safety::kSafe);
  CHECK(min_protected_path(safe, 0, 1).size() == 1);

  Graph unsafe(2);
  unsafe.add_edge(0, 1);
  CHECK_THROWS_AS(min_protected_path(unsafe, 0, 1), Error);

  unsafe.add_edge(0, 1);
  CHECK(min_protected_path(unsafe, 0, 1).size() == 2);
  CHECK(min_protected_path(unsafe, 0, 0).size() == 0);
}

TEST_CASE("protected paths match the oracle on every pair") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 40; ++round) {
    int n = 4 + static_cast<int>(rng() % 4);
    Graph g = random_graph(rng, n, n + static_cast<int>(rng() % 5), 0.6);
    NodeSet all;
    for (NodeId v = 0; v < n; ++v) all.push_back(v);
    ProtectedPathTable table(g, all);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        auto want = try_oracle_min_subgraph(g, {OracleKind::kProtectedPath, {a, b}, a, b}, false);
        auto got = table.cost(a, b);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
          CHECK(*got == want->edges.size());
          EdgeSet path(static_cast<std::size_t>(g.num_edges()), *table.path(a, b));
          CHECK(fst_feasible(g, path, {a, b}));
        }
      }
    }
  }
}

TEST_CASE("auxiliary graph and MST join") {
  Graph g = cycle_graph(6);
  ProtectedPathTable table(g, {0, 1, 2, 3, 4, 5});
  auto k = build_auxiliary_k(table, {{0, 1}}, {0, 2, 4});
  CHECK(k.nodes.size() == 4);
  CHECK(*k.cost[0][1] == 0);  // part {0,1} overlaps terminal 0
  auto join = mst_join(k);
  CHECK(join.pieces.size() == 3);

  Graph lonely(3);
  lonely.add_edge(0, 1);
  ProtectedPathTable none(lonely, {0, 1, 2});
  auto k2 = build_auxiliary_k(none, {}, {0, 2});
  CHECK_FALSE(k2.cost[0][1].has_value());
  CHECK_THROWS_AS(mst_join(k2), Error);

  AuxiliaryGraphK partial;
  partial.nodes = {{0}, {1}, {2}};
  partial.cost = {{0, 1, std::nullopt}, {1, 0, 1}, {std::nullopt, 1, 0}};
  partial.path = {{{}, {0}, {}}, {{0}, {}, {1}}, {{}, {1}, {}}};
  partial.ends = std::vector<std::vector<std::pair<NodeId, NodeId>>>(3, std::vector<std::pair<NodeId, NodeId>>(3));
  CHECK(mst_join(partial).tree_cost == 2);
}

TEST_CASE("k-FST hand examples") {
  CHECK(solve_kfst_unweighted(make_fst_instance(cycle_graph(5), {0, 1, 3})).size() == 5);
  CHECK(solve_kfst_unweighted(make_fst_instance(path_graph(5, Safety::kSafe), {0, 4})).size() == 4);
  CHECK_THROWS_AS(solve_kfst_unweighted(make_fst_instance(path_graph(3), {0, 2})), Error);
  CHECK(solve_2ecs(cycle_graph(4, Safety::kSafe), {0, 1, 2, 3}).size() == 4);

  Graph bundle(3);
  bundle.add_edge(0, 1);
  bundle.add_edge(0, 1);
  bundle.add_edge(1, 2);
  bundle.add_edge(1, 2);
  auto b = solve_2ecs(bundle, {0, 2});
  CHECK(b.size() == 4);
  CHECK(is_2ec(bundle, b.edges));
}

TEST_CASE("k-FST and 2ECS match the oracle") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 20; ++round) {
    GeneratorSpec spec;
    spec.kind = ProblemKind::kFst;
    spec.n = 5 + static_cast<int>(rng() % 3);
    spec.m = spec.n + 2 + static_cast<int>(rng() % 3);
    spec.k = 3;
    spec.unsafe_fraction = round % 3 == 0 ? 0.0 : 0.5;
    spec.seed = rng();
    Instance inst = generate_instance(spec);
    auto fst = solve_kfst_unweighted(make_fst_instance(inst.graph, inst.terminals), {.mode = SearchMode::kFast});
    auto fst_ref = oracle_min_subgraph(inst.graph, inst.terminals, ProblemKind::kFst, false);
    CHECK(fst.size() == fst_ref.edges.size());
    CHECK(fst_feasible(inst.graph, fst.edges, inst.terminals));

    auto ecs = solve_2ecs(inst.graph, inst.terminals, std::nullopt, {.mode = SearchMode::kFast});
    auto ecs_ref = oracle_min_subgraph(inst.graph, inst.terminals, ProblemKind::k2ecs, false);
    CHECK(ecs.size() == ecs_ref.edges.size());
    CHECK(ref_2ec(inst.graph, ecs.edges));
  }
}

TEST_CASE("audit and fast k-FST agree") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 4; ++round) {
    GeneratorSpec spec;
    spec.kind = ProblemKind::kFst;
    spec.n = 5;
    spec.m = 7;
    spec.k = 3;
    spec.seed = rng();
    Instance inst = generate_instance(spec);
    auto fi = make_fst_instance(inst.graph, inst.terminals);
    auto audit = solve_kfst_unweighted(fi, {.mode = SearchMode::kAudit});
    auto fast = solve_kfst_unweighted(fi, {.mode = SearchMode::kFast});
    CHECK(audit.size() == fast.size());
    CHECK(fast.stats.iterations <= audit.stats.iterations);
  }
}

TEST_CASE("weighted k-FST") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 8; ++round) {
    GeneratorSpec spec;
    spec.kind = ProblemKind::kFst;
    spec.n = 5 + static_cast<int>(rng() % 3);
    spec.m = spec.n + 2;
    spec.k = 3;
    spec.weighted = true;
    spec.seed = rng();
    Instance inst = generate_instance(spec);
    auto best = oracle_min_subgraph(inst.graph, inst.terminals, ProblemKind::kFst, true);
    auto got = solve_kfst_weighted(make_fst_instance(inst.graph, inst.terminals), Cost(1, 4), {.mode = SearchMode::kFast});
    CHECK(got.cost <= Cost(5, 4) * best.cost);
    CHECK(fst_feasible(inst.graph, got.edges, inst.terminals));
  }

  Graph zero(3);
  zero.add_edge(0, 1, 0);
  zero.add_edge(0, 1, 0);
  zero.add_edge(1, 2, 3, Safety::kSafe);
  auto z = solve_kfst_weighted(make_fst_instance(zero, {0, 2}), Cost(1, 10));
  CHECK(z.cost == 3);
}
