#pragma once

#include <optional>
#include <vector>

#include "snd/graph.hpp"

namespace snd {

struct WalkPath {
  std::vector<NodeId> nodes;  // nodes.size() == edges.size() + 1
  std::vector<EdgeId> edges;
};

/// Two paths that start at `source`, end in `targets`, share only the
/// source, and whose internal nodes avoid `targets`. With a single target
/// the paths share both ends (openly disjoint source-target paths).
/// Unit node capacities via node splitting; nullopt when no such pair exists.
std::optional<std::pair<WalkPath, WalkPath>> two_fan(const Graph& g, NodeId source, const NodeSet& targets,
                                                     const EdgeSet* usable = nullptr);

}  // namespace snd
