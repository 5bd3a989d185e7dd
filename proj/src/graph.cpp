#include "snd/graph.hpp"

#include <algorithm>
#include <map>

namespace snd {

NodeSet make_node_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

bool contains(const NodeSet& set, NodeId v) { return std::binary_search(set.begin(), set.end(), v); }

Graph::Graph(NodeId num_nodes) : adjacency_(static_cast<std::size_t>(num_nodes)) {
  if (num_nodes < 0) throw Error(ErrorCode::kInvalidArgument, "negative node count");
}

NodeId Graph::add_node() {
  adjacency_.emplace_back();
  return num_nodes() - 1;
}

EdgeId Graph::add_edge(NodeId u, NodeId v, Cost cost, Safety safety) {
  if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes()) {
    throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
  }
  if (u == v) throw Error(ErrorCode::kInvalidArgument, "self-loop on node " + std::to_string(u));
  if (cost < 0) throw Error(ErrorCode::kInvalidArgument, "negative edge cost");
  auto id = num_edges();
  edges_.push_back(Edge{id, u, v, std::move(cost), safety});
  adjacency_[static_cast<std::size_t>(u)].push_back(id);
  adjacency_[static_cast<std::size_t>(v)].push_back(id);
  return id;
}

bool Graph::unit_costs() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.cost == 1; });
}

Cost Graph::cost_of(const EdgeSet& edges) const {
  Cost total = 0;
  for (EdgeId e : edges.ids()) total += edge(e).cost;
  return total;
}

EdgeSet Graph::all_edges() const {
  EdgeSet s(edges_.size());
  for (const auto& e : edges_) s.insert(e.id);
  return s;
}

Subgraph extract_subgraph(const Graph& g, const EdgeSet& edges) {
  Subgraph sub;
  sub.from_parent_node.assign(static_cast<std::size_t>(g.num_nodes()), kNoNode);
  auto ids = edges.ids();
  auto map_node = [&](NodeId v) {
    auto& slot = sub.from_parent_node[static_cast<std::size_t>(v)];
    if (slot == kNoNode) {
      slot = sub.graph.add_node();
      sub.to_parent_node.push_back(v);
    }
    return slot;
  };
  for (EdgeId id : ids) {
    const Edge& e = g.edge(id);
    NodeId a = map_node(e.u);
    NodeId b = map_node(e.v);
    sub.graph.add_edge(a, b, e.cost, e.safety);
    sub.to_parent_edge.push_back(id);
  }
  return sub;
}

NodeSet touched_nodes(const Graph& g, const EdgeSet& edges) {
  std::vector<NodeId> nodes;
  for (EdgeId id : edges.ids()) {
    nodes.push_back(g.edge(id).u);
    nodes.push_back(g.edge(id).v);
  }
  return make_node_set(std::move(nodes));
}

Graph with_safety(const Graph& g, Safety safety) {
  Graph out(g.num_nodes());
  for (const auto& e : g.edges()) out.add_edge(e.u, e.v, e.cost, safety);
  return out;
}

Graph with_unit_costs(const Graph& g) {
  Graph out(g.num_nodes());
  for (const auto& e : g.edges()) out.add_edge(e.u, e.v, 1, e.safety);
  return out;
}

Graph simple_graph(const Graph& g, std::vector<EdgeId>& kept) {
  kept.clear();
  Graph out(g.num_nodes());
  std::map<std::pair<NodeId, NodeId>, EdgeId> seen;
  for (const auto& e : g.edges()) {
    auto key = std::minmax(e.u, e.v);
    if (seen.emplace(std::pair{key.first, key.second}, e.id).second) {
      out.add_edge(e.u, e.v, e.cost, e.safety);
      kept.push_back(e.id);
    }
  }
  return out;
}

}  // namespace snd
