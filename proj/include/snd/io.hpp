#pragma once

#include <string>
#include <string_view>

#include "snd/graph.hpp"

namespace snd {

/// Problem instance as stored on disk:
///
///   # comment
///   p <cycle|2ncs|2ecs|kfst> <n> <m> <k>
///   t <node>                        (k lines)
///   e <u> <v> <cost> <S|U>          (m lines; cost as decimal or p/q)
struct Instance {
  ProblemKind kind = ProblemKind::kCycle;
  Graph graph;
  NodeSet terminals;
};

/// Throws ParseError (kParseError for malformed records, kSemanticError
/// for well-formed records with invalid content such as negative costs).
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);

std::string write_instance(const Instance& inst);

bool same_instance(const Instance& a, const Instance& b);

struct GeneratorSpec {
  ProblemKind kind = ProblemKind::k2ncs;
  int n = 8;
  int m = 12;
  int k = 3;
  bool weighted = false;
  int max_cost = 50;             // weighted costs are uniform integers in [0, max_cost]
  double unsafe_fraction = 0.5;  // share of unsafe edges
  std::uint64_t seed = 1;
  /// Draw terminals from all nodes instead of placing them on the planted
  /// cycle; they still share the single block, but a Steiner cycle through
  /// them may not exist.
  bool spread_terminals = false;
};

/// Random 2-node-connected instance: a planted simple cycle through all
/// terminals, every remaining node hung on two earlier nodes, then noise
/// edges up to m. Needs m >= n. Deterministic per seed. Throws SpecInfeasible.
Instance generate_instance(const GeneratorSpec& spec);

}  // namespace snd
