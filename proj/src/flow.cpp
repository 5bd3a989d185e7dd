#include "snd/flow.hpp"

#include <queue>

namespace snd {

namespace {

// Edmonds-Karp on a small residual network; only two augmentations are ever
// needed here.
class UnitFlow {
 public:
  struct Arc {
    int to;
    int cap;
    int rev;
    EdgeId label;
  };

  explicit UnitFlow(int n) : adj_(static_cast<std::size_t>(n)) {}

  void add(int from, int to, int cap, EdgeId label) {
    auto& a = adj_[static_cast<std::size_t>(from)];
    auto& b = adj_[static_cast<std::size_t>(to)];
    a.push_back({to, cap, static_cast<int>(b.size()), label});
    b.push_back({from, 0, static_cast<int>(a.size()) - 1, kNoEdge});
  }

  int augment(int s, int t, int limit) {
    int flow = 0;
    while (flow < limit) {
      std::vector<std::pair<int, int>> parent(adj_.size(), {-1, -1});
      std::queue<int> q;
      q.push(s);
      parent[static_cast<std::size_t>(s)] = {s, -1};
      while (!q.empty() && parent[static_cast<std::size_t>(t)].first == -1) {
        int x = q.front();
        q.pop();
        auto& arcs = adj_[static_cast<std::size_t>(x)];
        for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
          const Arc& a = arcs[static_cast<std::size_t>(i)];
          if (a.cap > 0 && parent[static_cast<std::size_t>(a.to)].first == -1) {
            parent[static_cast<std::size_t>(a.to)] = {x, i};
            q.push(a.to);
          }
        }
      }
      if (parent[static_cast<std::size_t>(t)].first == -1) break;
      for (int y = t; y != s;) {
        auto [x, i] = parent[static_cast<std::size_t>(y)];
        Arc& a = adj_[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)];
        a.cap -= 1;
        adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += 1;
        y = x;
      }
      ++flow;
    }
    return flow;
  }

  // Flow carried by a forward arc = residual capacity of its reverse arc.
  std::vector<Arc>& arcs(int x) { return adj_[static_cast<std::size_t>(x)]; }
  int carried(const Arc& a) const { return adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap; }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace

std::optional<std::pair<WalkPath, WalkPath>> two_fan(const Graph& g, NodeId source, const NodeSet& targets,
                                                     const EdgeSet* usable) {
  const int n = g.num_nodes();
  auto in = [](NodeId v) { return 2 * v; };
  auto out = [](NodeId v) { return 2 * v + 1; };
  const int sink = 2 * n;
  const int sink_cap = targets.size() == 1 ? 2 : 1;

  UnitFlow net(2 * n + 1);
  for (NodeId v = 0; v < n; ++v) {
    if (v == source) continue;
    if (contains(targets, v)) {
      net.add(in(v), sink, sink_cap, kNoEdge);
    } else {
      net.add(in(v), out(v), 1, kNoEdge);
    }
  }
  for (const auto& e : g.edges()) {
    if (usable && !usable->contains(e.id)) continue;
    net.add(out(e.u), in(e.v), 1, e.id);
    net.add(out(e.v), in(e.u), 1, e.id);
  }
  if (net.augment(out(source), sink, 2) < 2) return std::nullopt;

  // Peel the two unit paths off the flow.
  auto peel = [&]() {
    WalkPath p;
    p.nodes.push_back(source);
    int x = out(source);
    while (true) {
      bool moved = false;
      for (auto& a : net.arcs(x)) {
        if (a.label == kNoEdge || net.carried(a) <= 0) continue;
        // consume one unit so the second peel takes the other branch
        net.arcs(a.to)[static_cast<std::size_t>(a.rev)].cap -= 1;
        NodeId w = a.to / 2;
        p.edges.push_back(a.label);
        p.nodes.push_back(w);
        if (contains(targets, w)) return p;
        x = out(w);
        moved = true;
        break;
      }
      if (!moved) return p;
    }
  };
  WalkPath first = peel();
  WalkPath second = peel();
  return std::pair{std::move(first), std::move(second)};
}

}  // namespace snd
