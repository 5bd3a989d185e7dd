#pragma once

#include <vector>

#include "snd/graph.hpp"

namespace snd {

/// Graph with maximal runs of degree-2 nodes contracted into weighted links.
///
/// A node survives when it is forced (`keep`) or its degree is not 2. Runs
/// of degree-2 nodes that close on themselves without meeting a surviving
/// node are dropped.
struct ChainGraph {
  struct Link {
    int a = -1;  // chain-graph node ids
    int b = -1;
    std::vector<EdgeId> edges;  // original edges, walked from a to b
    bool all_safe = true;
    int length() const { return static_cast<int>(edges.size()); }
  };

  std::vector<NodeId> to_original;
  std::vector<int> from_original;  // original node -> chain node or -1
  std::vector<Link> links;
  std::vector<std::vector<int>> adjacency;  // chain node -> link ids

  int num_nodes() const { return static_cast<int>(to_original.size()); }
};

ChainGraph compress_chains(const Graph& g, const std::vector<char>& keep);

}  // namespace snd
