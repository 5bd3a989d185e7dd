#include <algorithm>
#include <queue>

#include "snd/flow.hpp"
#include "snd/structure.hpp"

namespace snd {

namespace {

Error not_two_connected(const std::string& why) { return Error(ErrorCode::kNotTwoConnected, why); }

}  // namespace

EarDecomposition ear_decomposition(const Graph& g, bool open_required) {
  const NodeId n = g.num_nodes();
  if (n < 2) throw not_two_connected("fewer than two nodes");
  if (open_required && n < 3) throw not_two_connected("an open decomposition needs at least three nodes");

  // Iterative DFS from node 0: preorder, parent edge, discovery index.
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<EdgeId> parent_edge(static_cast<std::size_t>(n), kNoEdge);
  std::vector<NodeId> preorder;
  std::vector<char> is_tree(static_cast<std::size_t>(g.num_edges()), 0);
  {
    std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
    disc[0] = 0;
    preorder.push_back(0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      auto inc = g.incident(v);
      if (next == inc.size()) {
        stack.pop_back();
        continue;
      }
      EdgeId e = inc[next++];
      NodeId w = g.edge(e).other(v);
      if (disc[static_cast<std::size_t>(w)] != -1) continue;
      disc[static_cast<std::size_t>(w)] = static_cast<int>(preorder.size());
      preorder.push_back(w);
      parent_edge[static_cast<std::size_t>(w)] = e;
      is_tree[static_cast<std::size_t>(e)] = 1;
      stack.emplace_back(w, 0);
    }
  }
  if (static_cast<NodeId>(preorder.size()) != n) throw not_two_connected("graph is disconnected");

  // Back edges grouped by their ancestor endpoint. Parallel copies of tree
  // edges go last so deeper chains mark the child first.
  std::vector<std::vector<EdgeId>> back_from(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    if (is_tree[static_cast<std::size_t>(e.id)]) continue;
    NodeId anc = disc[static_cast<std::size_t>(e.u)] < disc[static_cast<std::size_t>(e.v)] ? e.u : e.v;
    back_from[static_cast<std::size_t>(anc)].push_back(e.id);
  }
  for (NodeId v = 0; v < n; ++v) {
    auto& list = back_from[static_cast<std::size_t>(v)];
    auto key = [&](EdgeId e) {
      NodeId w = g.edge(e).other(v);
      bool parallel_to_tree = g.edge(parent_edge[static_cast<std::size_t>(w)]).other(w) == v;
      return std::tuple{parallel_to_tree, disc[static_cast<std::size_t>(w)], e};
    };
    std::sort(list.begin(), list.end(), [&](EdgeId a, EdgeId b) { return key(a) < key(b); });
  }

  EarDecomposition dec;
  dec.base_node = 0;
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  std::vector<char> covered(static_cast<std::size_t>(g.num_edges()), 0);
  marked[0] = 1;
  for (NodeId v : preorder) {
    for (EdgeId back : back_from[static_cast<std::size_t>(v)]) {
      if (!marked[static_cast<std::size_t>(v)]) throw not_two_connected("chain starts outside the covered body");
      Ear ear;
      ear.nodes.push_back(v);
      ear.edges.push_back(back);
      covered[static_cast<std::size_t>(back)] = 1;
      NodeId x = g.edge(back).other(v);
      ear.nodes.push_back(x);
      while (!marked[static_cast<std::size_t>(x)]) {
        marked[static_cast<std::size_t>(x)] = 1;
        EdgeId up = parent_edge[static_cast<std::size_t>(x)];
        covered[static_cast<std::size_t>(up)] = 1;
        x = g.edge(up).other(x);
        ear.edges.push_back(up);
        ear.nodes.push_back(x);
      }
      ear.kind = x == v ? EarKind::kClosed : EarKind::kOpen;
      if (dec.ears.empty() && ear.kind != EarKind::kClosed) throw not_two_connected("first chain is not a cycle");
      if (open_required && !dec.ears.empty() && ear.kind == EarKind::kClosed) {
        throw not_two_connected("closed ear after the first one");
      }
      dec.ears.push_back(std::move(ear));
    }
  }
  if (dec.ears.empty()) throw not_two_connected("graph is acyclic");
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!covered[static_cast<std::size_t>(e)]) throw not_two_connected("edge " + std::to_string(e) + " is a bridge");
  }
  return dec;
}

EarDecomposition terminal_ear_decomposition(const Graph& h, const NodeSet& terminals) {
  if (terminals.empty()) throw Error(ErrorCode::kTerminalMissing, "empty terminal set");
  for (NodeId t : terminals) {
    if (t < 0 || t >= h.num_nodes() || h.degree(t) == 0) {
      throw Error(ErrorCode::kTerminalMissing, "terminal " + std::to_string(t) + " not in graph");
    }
  }
  if (!is_2nc(h)) throw not_two_connected("graph is not 2NC");

  const NodeId n = h.num_nodes();
  EarDecomposition dec;
  dec.base_node = terminals.front();
  std::vector<char> cov_node(static_cast<std::size_t>(n), 0);
  EdgeSet used(static_cast<std::size_t>(h.num_edges()));
  cov_node[static_cast<std::size_t>(dec.base_node)] = 1;

  auto covered_set = [&] {
    NodeSet s;
    for (NodeId v = 0; v < n; ++v) {
      if (cov_node[static_cast<std::size_t>(v)]) s.push_back(v);
    }
    return s;
  };
  auto add_ear = [&](Ear ear) {
    for (EdgeId e : ear.edges) used.insert(e);
    for (NodeId v : ear.nodes) cov_node[static_cast<std::size_t>(v)] = 1;
    dec.ears.push_back(std::move(ear));
  };
  // Joins two fan branches that both start at `apex` into one ear walk.
  auto join = [](const WalkPath& a, const WalkPath& b, EarKind kind) {
    Ear ear;
    ear.kind = kind;
    ear.nodes.assign(a.nodes.rbegin(), a.nodes.rend());
    ear.edges.assign(a.edges.rbegin(), a.edges.rend());
    ear.nodes.insert(ear.nodes.end(), b.nodes.begin() + 1, b.nodes.end());
    ear.edges.insert(ear.edges.end(), b.edges.begin(), b.edges.end());
    return ear;
  };

  // First ear: a cycle through P0 and the next terminal (or any neighbour).
  {
    NodeId partner = kNoNode;
    if (terminals.size() >= 2) {
      partner = terminals[1];
    } else {
      partner = h.edge(h.incident(dec.base_node).front()).other(dec.base_node);
    }
    auto fan = two_fan(h, partner, NodeSet{dec.base_node});
    if (!fan) throw not_two_connected("no two openly disjoint paths");
    // Rotate so the closed ear starts and ends at P0.
    Ear ear = join(fan->first, fan->second, EarKind::kClosed);
    auto it = std::find(ear.nodes.begin(), ear.nodes.end() - 1, dec.base_node);
    auto shift = static_cast<std::size_t>(it - ear.nodes.begin());
    std::vector<NodeId> nodes(ear.nodes.begin(), ear.nodes.end() - 1);
    std::rotate(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(shift), nodes.end());
    nodes.push_back(nodes.front());
    std::rotate(ear.edges.begin(), ear.edges.begin() + static_cast<std::ptrdiff_t>(shift), ear.edges.end());
    ear.nodes = std::move(nodes);
    add_ear(std::move(ear));
    dec.terminal_ears = 1;
  }

  // Two-fans from each uncovered terminal to the current body.
  while (true) {
    auto next = std::find_if(terminals.begin(), terminals.end(),
                             [&](NodeId t) { return !cov_node[static_cast<std::size_t>(t)]; });
    if (next == terminals.end()) break;
    auto fan = two_fan(h, *next, covered_set());
    if (!fan) throw not_two_connected("no two-fan to the covered body");
    add_ear(join(fan->first, fan->second, EarKind::kOpen));
    ++dec.terminal_ears;
  }

  // Remaining edges as ordinary open ears.
  while (used.size() < static_cast<std::size_t>(h.num_edges())) {
    EdgeId start = kNoEdge;
    NodeId a = kNoNode;
    for (const auto& e : h.edges()) {
      if (used.contains(e.id)) continue;
      if (cov_node[static_cast<std::size_t>(e.u)]) { start = e.id; a = e.u; break; }
      if (cov_node[static_cast<std::size_t>(e.v)]) { start = e.id; a = e.v; break; }
    }
    if (start == kNoEdge) throw not_two_connected("unreachable edges");
    NodeId b = h.edge(start).other(a);
    Ear ear;
    ear.kind = EarKind::kOpen;
    if (cov_node[static_cast<std::size_t>(b)]) {
      ear.nodes = {a, b};
      ear.edges = {start};
      add_ear(std::move(ear));
      continue;
    }
    // BFS from b through uncovered nodes until a covered node other than a.
    std::vector<std::pair<NodeId, EdgeId>> parent(static_cast<std::size_t>(n), {kNoNode, kNoEdge});
    std::queue<NodeId> q;
    q.push(b);
    parent[static_cast<std::size_t>(b)] = {a, start};
    NodeId end = kNoNode;
    EdgeId end_edge = kNoEdge;
    NodeId end_from = kNoNode;
    while (!q.empty() && end == kNoNode) {
      NodeId x = q.front();
      q.pop();
      for (EdgeId e : h.incident(x)) {
        if (used.contains(e)) continue;
        NodeId y = h.edge(e).other(x);
        if (y == a) continue;
        if (cov_node[static_cast<std::size_t>(y)]) {
          end = y;
          end_edge = e;
          end_from = x;
          break;
        }
        if (parent[static_cast<std::size_t>(y)].first == kNoNode && y != b) {
          parent[static_cast<std::size_t>(y)] = {x, e};
          q.push(y);
        }
      }
    }
    if (end == kNoNode) throw not_two_connected("no ear from node " + std::to_string(b));
    std::vector<NodeId> rev_nodes{end};
    std::vector<EdgeId> rev_edges{end_edge};
    for (NodeId x = end_from; x != a;) {
      rev_nodes.push_back(x);
      auto [px, pe] = parent[static_cast<std::size_t>(x)];
      rev_edges.push_back(pe);
      x = px;
    }
    rev_nodes.push_back(a);
    ear.nodes.assign(rev_nodes.rbegin(), rev_nodes.rend());
    ear.edges.assign(rev_edges.rbegin(), rev_edges.rend());
    add_ear(std::move(ear));
  }
  return dec;
}

std::string check_ear_decomposition(const Graph& g, const EarDecomposition& dec, bool open_required,
                                    const EdgeSet* edges) {
  EdgeSet target = edges ? *edges : g.all_edges();
  NodeSet target_nodes = touched_nodes(g, target);
  if (dec.base_node == kNoNode || !contains(target_nodes, dec.base_node)) return "P0 is not a node of the graph";
  if (dec.ears.empty()) return "no ears";

  std::vector<char> in_body(static_cast<std::size_t>(g.num_nodes()), 0);
  in_body[static_cast<std::size_t>(dec.base_node)] = 1;
  EdgeSet used(static_cast<std::size_t>(g.num_edges()));
  for (std::size_t i = 0; i < dec.ears.size(); ++i) {
    const Ear& ear = dec.ears[i];
    std::string where = "ear " + std::to_string(i + 1) + ": ";
    if (ear.edges.empty() || ear.nodes.size() != ear.edges.size() + 1) return where + "malformed walk";
    for (std::size_t j = 0; j < ear.edges.size(); ++j) {
      EdgeId e = ear.edges[j];
      if (e < 0 || e >= g.num_edges() || !target.contains(e)) return where + "edge outside the graph";
      if (used.contains(e)) return where + "edge reused";
      const Edge& ed = g.edge(e);
      bool links = (ed.u == ear.nodes[j] && ed.v == ear.nodes[j + 1]) ||
                   (ed.v == ear.nodes[j] && ed.u == ear.nodes[j + 1]);
      if (!links) return where + "edge does not join consecutive nodes";
      used.insert(e);
    }
    bool closed = ear.nodes.front() == ear.nodes.back();
    if (closed != (ear.kind == EarKind::kClosed)) return where + "kind tag does not match walk";
    if (i == 0 && !closed) return where + "first ear must be closed";
    if (i > 0 && open_required && closed) return where + "closed ear in an open decomposition";
    if (!in_body[static_cast<std::size_t>(ear.nodes.front())]) return where + "start outside previous body";
    if (!in_body[static_cast<std::size_t>(ear.nodes.back())]) return where + "end outside previous body";
    NodeSet interior(ear.nodes.begin() + 1, ear.nodes.end() - 1);
    for (NodeId v : interior) {
      if (in_body[static_cast<std::size_t>(v)]) return where + "internal node already covered";
    }
    if (make_node_set(interior).size() != interior.size()) return where + "walk repeats a node";
    for (NodeId v : ear.nodes) in_body[static_cast<std::size_t>(v)] = 1;
  }
  if (!(used == target)) return "ears do not cover exactly the edge set";
  return {};
}

}  // namespace snd
