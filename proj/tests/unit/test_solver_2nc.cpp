#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "snd/oracle.hpp"
#include "snd/solver_2nc.hpp"
#include "snd/structure.hpp"

using namespace snd;
using namespace snd::test;

namespace {

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long long binom(int n, int k) { return k < 0 || k > n ? 0 : factorial(n) / (factorial(k) * factorial(n - k)); }

// Sum over compositions (a_1..a_r) of q, r <= max_parts, a_1 >= 2, of the
// multinomial coefficient times the anchor-pair choices A_i (A_i - 1) for
// each later part, A_i being the size of the union of the first i parts.
long long configurations(int q, int max_parts, std::vector<int>& parts) {
  int used = 0;
  for (int a : parts) used += a;
  long long total = 0;
  if (used == q) {
    long long ways = factorial(q);
    for (int a : parts) ways /= factorial(a);
    int prefix = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      prefix += parts[i];
      ways *= static_cast<long long>(prefix) * (prefix - 1);
    }
    return ways;
  }
  if (static_cast<int>(parts.size()) == max_parts) return 0;
  for (int a = parts.empty() ? 2 : 1; used + a <= q; ++a) {
    parts.push_back(a);
    total += configurations(q, max_parts, parts);
    parts.pop_back();
  }
  return total;
}

long long expected_iterations(int universe, int k, int smax) {
  long long total = 0;
  for (int s = 0; s <= std::min(universe, smax); ++s) {
    std::vector<int> parts;
    total += binom(universe, s) * configurations(k + s, k, parts);
  }
  return total;
}

}  // namespace

TEST_CASE("closed-form configuration counts") {
  std::vector<int> parts;
  CHECK(configurations(3, 3, parts) == 7);
  CHECK(configurations(4, 3, parts) == 181);
}

TEST_CASE("marker bounds") {
  CHECK(max_marker_count(3, MarkerBound::kTwoKMinusFour) == 2);
  CHECK(max_marker_count(3, MarkerBound::kTwoK) == 6);
  CHECK(max_marker_count(2, MarkerBound::kTwoKMinusFour) == 0);
}

TEST_CASE("assemble candidate") {
  MarkerConfiguration tri;
  tri.partition.parts = {{0, 1, 2}};
  CHECK(assemble_candidate(cycle_graph(3), tri).size() == 3);

  MarkerConfiguration th;
  th.partition.parts = {{2, 3}, {4}};
  th.anchors = {{2, 3}};
  Graph g = theta();
  auto built = assemble_candidate(g, th);
  auto best = oracle_min_subgraph(g, {2, 3, 4}, ProblemKind::k2ncs, false);
  CHECK(built.size() == best.edges.size());

  Graph two_triangles(6);
  for (int base : {0, 3}) {
    two_triangles.add_edge(base, base + 1);
    two_triangles.add_edge(base + 1, base + 2);
    two_triangles.add_edge(base + 2, base);
  }
  MarkerConfiguration apart;
  apart.partition.parts = {{0, 1}, {4}};
  apart.anchors = {{0, 1}};
  CHECK_THROWS_AS(assemble_candidate(two_triangles, apart), Error);
}

TEST_CASE("2NCS hand examples") {
  CHECK(solve_2ncs_unweighted(cycle_graph(5), {0, 1, 3}).size() == 5);
  CHECK(solve_2ncs_unweighted(complete_graph(4), {0, 1, 2, 3}).size() == 4);
  CHECK_THROWS_AS(solve_2ncs_unweighted(bowtie(), {0, 4}), Error);
  auto th = solve_2ncs_unweighted(theta(), {2, 3, 4});
  CHECK(th.size() == 6);
}

TEST_CASE("audit iteration count matches the closed form") {
  Graph g = complete_graph(4);
  NodeSet t{0, 1, 2};
  // D3 minus T = {3}; at most 2k - 4 = 2 markers.
  auto sol = solve_2ncs_unweighted(g, t, {.mode = SearchMode::kAudit});
  CHECK(sol.stats.iterations == static_cast<std::uint64_t>(expected_iterations(1, 3, 2)));
  CHECK(sol.stats.iterations == 188);
  CHECK(sol.size() == 3);
}

TEST_CASE("2NCS matches the oracle; fast, audit and threads agree") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 25; ++round) {
    GeneratorSpec spec;
    spec.n = 5 + static_cast<int>(rng() % 3);
    spec.m = spec.n + 2 + static_cast<int>(rng() % 3);
    spec.k = 3;
    spec.seed = rng();
    Instance inst = generate_instance(spec);
    auto best = oracle_min_subgraph(inst.graph, inst.terminals, ProblemKind::k2ncs, false);
    auto audit = solve_2ncs_unweighted(inst.graph, inst.terminals, {.mode = SearchMode::kAudit});
    auto fast = solve_2ncs_unweighted(inst.graph, inst.terminals, {.mode = SearchMode::kFast});
    auto threaded = solve_2ncs_unweighted(inst.graph, inst.terminals, {.mode = SearchMode::kFast, .threads = 3});
    CHECK(audit.size() == best.edges.size());
    CHECK(fast.size() == best.edges.size());
    CHECK(threaded.size() == best.edges.size());
    CHECK(ref_2nc(inst.graph, audit.edges));
    CHECK(ref_2nc(inst.graph, fast.edges));
    CHECK(fast.stats.iterations <= audit.stats.iterations);
    CHECK(audit.stats.incumbent_trace.front() == static_cast<std::size_t>(inst.graph.num_edges()));
  }
}
