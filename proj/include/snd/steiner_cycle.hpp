#pragma once

#include <memory>
#include <optional>
#include <string>

#include "snd/solution.hpp"

namespace snd {

enum class CycleSolverKind : std::uint8_t { kExhaustive, kPlugin };

struct CycleSolverParams {
  double eta = 0.01;  // failure probability in (0, 1]
  std::uint64_t seed = 1;
  CycleSolverKind kind = CycleSolverKind::kExhaustive;
};

/// Minimum-size Steiner cycle contract: with probability >= 1 - eta return
/// the edge set of a minimum-size simple cycle through every terminal, or
/// nullopt when the graph has no such cycle. A wrong answer may only be a
/// missed cycle or a longer one; anything returned must be a valid cycle.
class CycleEngine {
 public:
  virtual ~CycleEngine() = default;
  virtual std::string name() const = 0;
  virtual std::optional<EdgeSet> find_cycle(const Graph& g, const NodeSet& terminals, double eta,
                                            std::uint64_t seed) = 0;
};

/// Deterministic depth-first enumeration of simple cycles through the
/// lowest-indexed terminal over the chain-compressed graph. Exact; ties go
/// to the lexicographically smallest edge-id set. Exponential worst case.
class ExhaustiveCycleEngine final : public CycleEngine {
 public:
  std::string name() const override { return "exhaustive"; }
  std::optional<EdgeSet> find_cycle(const Graph& g, const NodeSet& terminals, double eta,
                                    std::uint64_t seed) override;

  /// Existence only: stops at the first cycle found.
  static bool has_cycle(const Graph& g, const NodeSet& terminals);
};

std::shared_ptr<CycleEngine> exhaustive_engine();

/// Registers an engine for CycleSolverKind::kPlugin after checking it
/// against the brute-force oracle on a fixed set of seeded instances.
/// Throws PluginRejected on any disagreement.
void register_cycle_engine(std::shared_ptr<CycleEngine> engine);
std::shared_ptr<CycleEngine> registered_engine();
void clear_registered_engine();

std::shared_ptr<CycleEngine> engine_for(const CycleSolverParams& params);

/// Throws NoCycle.
Solution min_steiner_cycle(const Graph& g, const NodeSet& terminals, const CycleSolverParams& params = {});

/// Minimum-size simple s,t-path through every terminal via the auxiliary
/// node u' joined to s and t. Throws NoPath.
Solution min_steiner_path(const Graph& g, const NodeSet& terminals, NodeId s, NodeId t,
                          const CycleSolverParams& params = {});

// Non-throwing forms used by the search loops.
std::optional<EdgeSet> find_steiner_cycle(CycleEngine& engine, const Graph& g, const NodeSet& terminals, double eta,
                                          std::uint64_t seed);
std::optional<EdgeSet> find_steiner_path(CycleEngine& engine, const Graph& g, const NodeSet& terminals, NodeId s,
                                         NodeId t, double eta, std::uint64_t seed);

/// Node sequence of a simple cycle given by its edges (starts at the
/// smallest node, closes on it).
std::vector<NodeId> cycle_node_order(const Graph& g, const EdgeSet& cycle);

/// Per-call seed derived from a run seed and a call key.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

}  // namespace snd
