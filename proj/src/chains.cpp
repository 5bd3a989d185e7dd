#include "snd/chains.hpp"

namespace snd {

ChainGraph compress_chains(const Graph& g, const std::vector<char>& keep) {
  ChainGraph cg;
  const auto n = static_cast<std::size_t>(g.num_nodes());
  cg.from_original.assign(n, -1);
  auto kept = [&](NodeId v) {
    auto i = static_cast<std::size_t>(v);
    return (i < keep.size() && keep[i]) || g.degree(v) != 2;
  };
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!kept(v)) continue;
    cg.from_original[static_cast<std::size_t>(v)] = cg.num_nodes();
    cg.to_original.push_back(v);
  }
  cg.adjacency.resize(cg.to_original.size());

  std::vector<char> consumed(static_cast<std::size_t>(g.num_edges()), 0);
  for (int a = 0; a < cg.num_nodes(); ++a) {
    NodeId start = cg.to_original[static_cast<std::size_t>(a)];
    for (EdgeId first : g.incident(start)) {
      if (consumed[static_cast<std::size_t>(first)]) continue;
      ChainGraph::Link link;
      link.a = a;
      EdgeId e = first;
      NodeId x = start;
      while (true) {
        consumed[static_cast<std::size_t>(e)] = 1;
        link.edges.push_back(e);
        link.all_safe = link.all_safe && g.edge(e).safe();
        x = g.edge(e).other(x);
        if (kept(x)) break;
        auto inc = g.incident(x);
        e = inc[0] == e ? inc[1] : inc[0];
      }
      link.b = cg.from_original[static_cast<std::size_t>(x)];
      int id = static_cast<int>(cg.links.size());
      cg.adjacency[static_cast<std::size_t>(link.a)].push_back(id);
      if (link.b != link.a) cg.adjacency[static_cast<std::size_t>(link.b)].push_back(id);
      cg.links.push_back(std::move(link));
    }
  }
  return cg;
}

}  // namespace snd
