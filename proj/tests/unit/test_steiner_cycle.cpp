#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "snd/oracle.hpp"
#include "snd/steiner_cycle.hpp"
#include "snd/structure.hpp"

using namespace snd;
using namespace snd::test;

TEST_CASE("Steiner cycle hand examples") {
  CHECK(min_steiner_cycle(cycle_graph(3), {0, 1, 2}).size() == 3);
  CHECK(min_steiner_cycle(complete_graph(4), {0, 1, 2}).size() == 3);
  Graph star(4);
  for (NodeId leaf : {1, 2, 3}) star.add_edge(0, leaf);
  CHECK_THROWS_AS(min_steiner_cycle(star, {1, 2, 3}), Error);

  Graph two(2);
  two.add_edge(0, 1);
  two.add_edge(0, 1);
  CHECK(min_steiner_cycle(two, {0, 1}).size() == 2);
}

TEST_CASE("Steiner path hand examples") {
  CHECK(min_steiner_path(path_graph(3), {1}, 0, 2).size() == 2);
  // C4 = s(0), a(1), t(2), b(3).
  Solution p = min_steiner_path(cycle_graph(4), {1}, 0, 2);
  CHECK(p.size() == 2);
  CHECK(p.edges.contains(0));
  CHECK(p.edges.contains(1));
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(min_steiner_path(split, {}, 0, 3), Error);
}

TEST_CASE("cycle node order walks the cycle") {
  Graph g = cycle_graph(5);
  auto order = cycle_node_order(g, g.all_edges());
  CHECK(order.size() == 6);
  CHECK(order.front() == 0);
  CHECK(order.back() == 0);
}

TEST_CASE("exhaustive engine matches the oracle") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 150; ++round) {
    int n = 4 + static_cast<int>(rng() % 5);
    int m = n + static_cast<int>(rng() % 6);
    Graph g = random_graph(rng, n, m);
    int k = 1 + static_cast<int>(rng() % 3);
    NodeSet t;
    for (int i = 0; i < k; ++i) t.push_back(static_cast<NodeId>(rng() % static_cast<unsigned>(n)));
    t = make_node_set(t);
    auto got = find_steiner_cycle(*exhaustive_engine(), g, t, 0.01, 1);
    auto want = try_oracle_min_subgraph(g, {OracleKind::kCycle, t, kNoNode, kNoNode}, false);
    REQUIRE(got.has_value() == want.has_value());
    CHECK(ExhaustiveCycleEngine::has_cycle(g, t) == want.has_value());
    if (got) {
      CHECK(got->size() == want->edges.size());
      CHECK(*got == want->edges);  // same lexicographic tie-break
    }

    NodeId s = static_cast<NodeId>(rng() % static_cast<unsigned>(n));
    NodeId e = static_cast<NodeId>((s + 1 + rng() % static_cast<unsigned>(n - 1)) % static_cast<unsigned>(n));
    NodeSet inner;
    for (NodeId v : t) {
      if (v != s && v != e) inner.push_back(v);
    }
    auto path = find_steiner_path(*exhaustive_engine(), g, inner, s, e, 0.01, 1);
    auto path_ref = try_oracle_min_subgraph(g, {OracleKind::kPath, inner, s, e}, false);
    REQUIRE(path.has_value() == path_ref.has_value());
    if (path) CHECK(path->size() == path_ref->edges.size());
  }
}

namespace {

class NeverFinds final : public CycleEngine {
 public:
  std::string name() const override { return "never"; }
  std::optional<EdgeSet> find_cycle(const Graph&, const NodeSet&, double, std::uint64_t) override {
    return std::nullopt;
  }
};

class Delegating final : public CycleEngine {
 public:
  std::string name() const override { return "delegating"; }
  std::optional<EdgeSet> find_cycle(const Graph& g, const NodeSet& t, double eta, std::uint64_t seed) override {
    return ExhaustiveCycleEngine().find_cycle(g, t, eta, seed);
  }
};

}  // namespace

TEST_CASE("plugin engines are checked before registration") {
  clear_registered_engine();
  CHECK_THROWS_AS(register_cycle_engine(std::make_shared<NeverFinds>()), Error);
  CHECK(registered_engine() == nullptr);
  register_cycle_engine(std::make_shared<Delegating>());
  REQUIRE(registered_engine() != nullptr);
  CycleSolverParams params;
  params.kind = CycleSolverKind::kPlugin;
  CHECK(min_steiner_cycle(complete_graph(4), {0, 1, 2}, params).size() == 3);
  clear_registered_engine();
  CHECK_THROWS_AS(engine_for(params), Error);
}

TEST_CASE("derived seeds differ per key") {
  CHECK(derive_seed(1, 1) != derive_seed(1, 2));
  CHECK(derive_seed(1, 1) == derive_seed(1, 1));
}
