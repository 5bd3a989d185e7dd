#include <doctest.h>

#include <map>
#include <set>

#include "snd/enumerate.hpp"

using namespace snd;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Ordered Bell numbers by B(i) = sum_{j>=1} C(i,j) B(i-j).
long long ordered_bell(int i) {
  std::vector<long long> b(static_cast<std::size_t>(i) + 1, 0);
  b[0] = 1;
  for (int x = 1; x <= i; ++x) {
    for (int j = 1; j <= x; ++j) b[static_cast<std::size_t>(x)] += binom(x, j) * b[static_cast<std::size_t>(x - j)];
  }
  return b[static_cast<std::size_t>(i)];
}

// Surjections of an n-set onto r labels, counted by brute force.
long long surjections(int n, int r, int first_min) {
  long long count = 0;
  std::vector<int> lab(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<int> size(static_cast<std::size_t>(r), 0);
    for (int l : lab) ++size[static_cast<std::size_t>(l)];
    bool ok = size[0] >= first_min;
    for (int s : size) ok = ok && s > 0;
    count += ok ? 1 : 0;
    int i = n - 1;
    while (i >= 0 && lab[static_cast<std::size_t>(i)] == r - 1) lab[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++lab[static_cast<std::size_t>(i)];
  }
  return count;
}

long long count_partitions(std::vector<NodeId> ground, int max_parts, int first_min) {
  OrderedPartitionCursor cur(std::move(ground), max_parts, first_min);
  OrderedPartition p;
  long long c = 0;
  while (cur.next(p)) ++c;
  return c;
}

}  // namespace

TEST_CASE("subset cursor") {
  SubsetCursor a({10, 20}, 1);
  NodeSet s;
  std::vector<NodeSet> seen;
  while (a.next(s)) seen.push_back(s);
  CHECK(seen == std::vector<NodeSet>{{}, {10}, {20}});

  SubsetCursor b({1, 2, 3}, 3);
  int count = 0;
  while (b.next(s)) ++count;
  CHECK(count == 8);

  for (int n = 0; n <= 7; ++n) {
    for (int k = 1; k <= 3; ++k) {
      NodeSet u;
      for (int i = 0; i < n; ++i) u.push_back(i);
      SubsetCursor c(u, 2 * k);
      long long got = 0;
      std::set<NodeSet> distinct;
      while (c.next(s)) {
        ++got;
        distinct.insert(s);
      }
      long long want = 0;
      for (int i = 0; i <= std::min(n, 2 * k); ++i) want += binom(n, i);
      CHECK(got == want);
      CHECK(static_cast<long long>(distinct.size()) == want);
    }
  }
}

TEST_CASE("ordered partitions") {
  CHECK(count_partitions({1, 2, 3}, 3, 0) == 13);
  CHECK(count_partitions({1, 2}, 2, 2) == 1);
  CHECK(count_partitions({1}, 1, 2) == 0);

  // Ordered Bell numbers from an independent recurrence.
  CHECK(ordered_bell(1) == 1);
  CHECK(ordered_bell(2) == 3);
  CHECK(ordered_bell(3) == 13);
  CHECK(ordered_bell(4) == 75);
  for (int i = 1; i <= 5; ++i) {
    std::vector<NodeId> ground;
    for (int x = 0; x < i; ++x) ground.push_back(x);
    CHECK(count_partitions(ground, i, 0) == ordered_bell(i));
    for (int r = 1; r <= i; ++r) {
      long long want = 0;
      for (int q = 1; q <= r; ++q) want += surjections(i, q, 2);
      CHECK(count_partitions(ground, r, 2) == want);
    }
  }

  OrderedPartitionCursor cur({5, 6}, 2, 0);
  OrderedPartition p;
  std::set<std::vector<NodeSet>> seen;
  while (cur.next(p)) {
    for (const auto& part : p.parts) CHECK_FALSE(part.empty());
    seen.insert(p.parts);
  }
  CHECK(seen.size() == 3);
}

TEST_CASE("tuple cursor") {
  auto count = [](NodeSet u, int len) {
    TupleCursor c(std::move(u), len);
    std::vector<NodeId> t;
    int n = 0;
    while (c.next(t)) ++n;
    return n;
  };
  CHECK(count({1, 2}, 2) == 4);
  CHECK(count({1, 2}, 0) == 1);
  CHECK(count({1, 2, 3}, 3) == 27);
  TupleCursor single({4}, 3);
  std::vector<NodeId> t;
  REQUIRE(single.next(t));
  CHECK(t == std::vector<NodeId>{4, 4, 4});
  CHECK_FALSE(single.next(t));
}

TEST_CASE("set partitions count Stirling sums") {
  // Stirling numbers of the second kind by recurrence.
  auto stirling = [](int n, int k) {
    std::vector<std::vector<long long>> s(static_cast<std::size_t>(n) + 1,
                                          std::vector<long long>(static_cast<std::size_t>(n) + 2, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= i; ++j) {
        s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            j * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] +
            s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      }
    }
    return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  };
  for (int n = 1; n <= 6; ++n) {
    for (int maxp = 1; maxp <= n; ++maxp) {
      SetPartitionCursor c(n, maxp);
      std::vector<int> lab;
      long long got = 0;
      while (c.next(lab)) ++got;
      long long want = 0;
      for (int j = 1; j <= maxp; ++j) want += stirling(n, j);
      CHECK(got == want);
    }
  }
}

TEST_CASE("anchor pairs") {
  auto pairs = anchor_pairs({{1}, {2}});
  CHECK(pairs == std::vector<std::pair<NodeId, NodeId>>{{1, 2}, {2, 1}});
  for (int q = 2; q <= 6; ++q) {
    NodeSet u;
    for (int i = 0; i < q; ++i) u.push_back(i);
    CHECK(static_cast<int>(anchor_pairs({u}).size()) == q * (q - 1));
  }
  CHECK_THROWS_AS(anchor_pairs({{7}}), Error);
}
