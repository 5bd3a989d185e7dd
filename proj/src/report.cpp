#include "snd/report.hpp"

#include <algorithm>
#include <map>

#include "snd/protected_path.hpp"
#include "snd/steiner_cycle.hpp"
#include "snd/structure.hpp"

namespace snd {

using nlohmann::json;

namespace {

std::vector<NodeId> map_nodes(const std::vector<NodeId>& nodes, const Subgraph& sub) {
  std::vector<NodeId> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) out.push_back(sub.to_parent_node[static_cast<std::size_t>(v)]);
  return out;
}

std::vector<EdgeId> map_edges(const std::vector<EdgeId>& edges, const Subgraph& sub) {
  std::vector<EdgeId> out;
  out.reserve(edges.size());
  for (EdgeId e : edges) out.push_back(sub.to_parent_edge[static_cast<std::size_t>(e)]);
  return out;
}

json ears_json(const EarDecomposition& dec, const Subgraph& sub, bool open) {
  json ears = json::array();
  for (const Ear& ear : dec.ears) {
    ears.push_back({{"kind", ear.kind == EarKind::kOpen ? "open" : "closed"},
                    {"nodes", map_nodes(ear.nodes, sub)},
                    {"edges", map_edges(ear.edges, sub)}});
  }
  return {{"type", "ear_decomposition"},
          {"open", open},
          {"base_node", sub.to_parent_node[static_cast<std::size_t>(dec.base_node)]},
          {"terminal_ears", dec.terminal_ears},
          {"ears", ears}};
}

json block_tree_json(const Graph& g, const EdgeSet& edges, const NodeSet& terminals) {
  Subgraph sub = extract_subgraph(g, edges);
  BlockTree bt = block_tree(sub.graph);
  CondensedBlockTree cbt = condensed_block_tree(bt);

  json blocks = json::array();
  for (const Block& b : bt.blocks) {
    auto nodes = map_nodes(b.nodes, sub);
    auto ids = map_edges(b.edges, sub);
    std::sort(nodes.begin(), nodes.end());
    std::sort(ids.begin(), ids.end());
    blocks.push_back({{"nodes", nodes}, {"edges", ids}});
  }
  json tree_edges = json::array();
  for (auto [a, b] : bt.tree_edges) tree_edges.push_back({a, b});
  json cut_nodes = json::array();
  for (const auto& [v, list] : bt.cut_node_map) {
    cut_nodes.push_back({{"node", sub.to_parent_node[static_cast<std::size_t>(v)]}, {"blocks", list}});
  }
  json cedges = json::array();
  for (const auto& e : cbt.edges) cedges.push_back({{"from", e.from}, {"to", e.to}, {"through", e.through}});

  // One protected path from the first terminal to each other terminal,
  // inside the solution subgraph.
  json paths = json::array();
  if (!terminals.empty()) {
    NodeId root = sub.from_parent_node[static_cast<std::size_t>(terminals.front())];
    for (std::size_t i = 1; i < terminals.size(); ++i) {
      NodeId other = sub.from_parent_node[static_cast<std::size_t>(terminals[i])];
      Solution p = min_protected_path(sub.graph, root, other);
      paths.push_back({{"from", terminals.front()}, {"to", terminals[i]}, {"edges", map_edges(p.edges.ids(), sub)}});
    }
  }
  return {{"type", "block_tree"},
          {"blocks", blocks},
          {"tree_edges", tree_edges},
          {"cut_nodes", cut_nodes},
          {"condensed", {{"nodes", cbt.nodes}, {"edges", cedges}}},
          {"protected_paths", paths}};
}

std::string mode_name(SearchMode mode) { return mode == SearchMode::kFast ? "fast" : "audit"; }

// --- validation helpers -----------------------------------------------------

std::string check_cycle_order(const Graph& g, const EdgeSet& edges, const NodeSet& terminals, const json& order_json) {
  auto order = order_json.get<std::vector<NodeId>>();
  if (order.size() < 3 || order.front() != order.back()) return "node order is not a closed walk";
  if (order.size() - 1 != edges.size()) return "node order length differs from the edge count";
  NodeSet interior(order.begin(), order.end() - 1);
  if (make_node_set(interior).size() != interior.size()) return "cycle repeats a node";
  for (NodeId t : terminals) {
    if (std::find(order.begin(), order.end(), t) == order.end()) return "terminal missing from the cycle";
  }
  EdgeSet used(static_cast<std::size_t>(g.num_edges()));
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    NodeId a = order[i];
    NodeId b = order[i + 1];
    if (a < 0 || a >= g.num_nodes() || b < 0 || b >= g.num_nodes()) return "node out of range";
    bool found = false;
    for (EdgeId e : g.incident(a)) {
      if (edges.contains(e) && !used.contains(e) && g.edge(e).other(a) == b) {
        used.insert(e);
        found = true;
        break;
      }
    }
    if (!found) return "consecutive nodes not joined by an unused solution edge";
  }
  return {};
}

std::string check_ears(const Graph& g, const EdgeSet& edges, const NodeSet& terminals, const json& cert, bool open) {
  if (cert.at("open").get<bool>() != open) return "wrong ear decomposition type";
  EarDecomposition dec;
  dec.base_node = cert.at("base_node").get<NodeId>();
  dec.terminal_ears = cert.at("terminal_ears").get<int>();
  for (const auto& ej : cert.at("ears")) {
    Ear ear;
    ear.kind = ej.at("kind").get<std::string>() == "open" ? EarKind::kOpen : EarKind::kClosed;
    ear.nodes = ej.at("nodes").get<std::vector<NodeId>>();
    ear.edges = ej.at("edges").get<std::vector<EdgeId>>();
    for (NodeId v : ear.nodes) {
      if (v < 0 || v >= g.num_nodes()) return "ear node out of range";
    }
    dec.ears.push_back(std::move(ear));
  }
  if (auto why = check_ear_decomposition(g, dec, open, &edges); !why.empty()) return why;
  NodeSet covered = touched_nodes(g, edges);
  for (NodeId t : terminals) {
    if (!contains(covered, t)) return "terminal not covered";
  }
  return {};
}

std::string check_block_tree_cert(const Graph& g, const EdgeSet& edges, const NodeSet& terminals, const json& cert) {
  Subgraph sub = extract_subgraph(g, edges);
  std::map<EdgeId, EdgeId> to_sub;
  for (std::size_t i = 0; i < sub.to_parent_edge.size(); ++i) {
    to_sub[sub.to_parent_edge[i]] = static_cast<EdgeId>(i);
  }
  auto sub_node = [&](NodeId v) -> NodeId {
    if (v < 0 || v >= g.num_nodes()) return kNoNode;
    return sub.from_parent_node[static_cast<std::size_t>(v)];
  };

  BlockTree bt;
  for (const auto& bj : cert.at("blocks")) {
    Block b;
    for (NodeId v : bj.at("nodes").get<std::vector<NodeId>>()) {
      NodeId s = sub_node(v);
      if (s == kNoNode) return "block node outside the solution";
      b.nodes.push_back(s);
    }
    for (EdgeId e : bj.at("edges").get<std::vector<EdgeId>>()) {
      auto it = to_sub.find(e);
      if (it == to_sub.end()) return "block edge outside the solution";
      b.edges.push_back(it->second);
    }
    b.nodes = make_node_set(std::move(b.nodes));
    std::sort(b.edges.begin(), b.edges.end());
    bt.blocks.push_back(std::move(b));
  }
  const int nb = static_cast<int>(bt.blocks.size());
  bt.adjacency.assign(bt.blocks.size(), {});
  for (const auto& tj : cert.at("tree_edges")) {
    int a = tj.at(0).get<int>();
    int b = tj.at(1).get<int>();
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return "tree edge index out of range";
    bt.tree_edges.emplace_back(a, b);
    bt.adjacency[static_cast<std::size_t>(a)].push_back(b);
    bt.adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& adj : bt.adjacency) std::sort(adj.begin(), adj.end());
  if (auto why = check_block_tree(sub.graph, bt); !why.empty()) return "block tree: " + why;

  CondensedBlockTree cbt;
  const json& cj = cert.at("condensed");
  cbt.nodes = cj.at("nodes").get<std::vector<int>>();
  for (const auto& ej : cj.at("edges")) {
    CondensedEdge ce;
    ce.from = ej.at("from").get<int>();
    ce.to = ej.at("to").get<int>();
    ce.through = ej.at("through").get<std::vector<int>>();
    for (int x : ce.through) {
      if (x < 0 || x >= nb) return "condensed edge index out of range";
    }
    if (ce.from < 0 || ce.to < 0 || ce.from >= nb || ce.to >= nb) return "condensed edge index out of range";
    cbt.edges.push_back(std::move(ce));
  }
  if (auto why = check_condensed_block_tree(bt, cbt); !why.empty()) return "condensed tree: " + why;

  // Each listed path must itself be a feasible 2-FST solution between its
  // ends inside F, and together they must reach every terminal.
  NodeSet reached;
  if (!terminals.empty()) reached.push_back(terminals.front());
  for (const auto& pj : cert.at("protected_paths")) {
    NodeId a = pj.at("from").get<NodeId>();
    NodeId b = pj.at("to").get<NodeId>();
    EdgeSet piece(static_cast<std::size_t>(g.num_edges()));
    for (EdgeId e : pj.at("edges").get<std::vector<EdgeId>>()) {
      if (e < 0 || e >= g.num_edges() || !edges.contains(e)) return "protected path leaves the solution";
      piece.insert(e);
    }
    if (!fst_feasible(g, piece, make_node_set({a, b}))) return "protected path is not protected";
    reached.push_back(a);
    reached.push_back(b);
  }
  reached = make_node_set(std::move(reached));
  for (NodeId t : terminals) {
    if (!contains(reached, t)) return "protected paths miss a terminal";
  }
  return {};
}

}  // namespace

json make_certificate(const Instance& inst, ProblemKind kind, const Solution& sol) {
  const Graph& g = inst.graph;
  if (sol.edges.empty()) return {{"type", "empty"}};
  switch (kind) {
    case ProblemKind::kCycle:
      return {{"type", "cycle"}, {"node_order", cycle_node_order(g, sol.edges)}};
    case ProblemKind::k2ncs: {
      Subgraph sub = extract_subgraph(g, sol.edges);
      NodeSet terms;
      for (NodeId t : inst.terminals) terms.push_back(sub.from_parent_node[static_cast<std::size_t>(t)]);
      return ears_json(terminal_ear_decomposition(sub.graph, make_node_set(terms)), sub, true);
    }
    case ProblemKind::k2ecs: {
      Subgraph sub = extract_subgraph(g, sol.edges);
      return ears_json(ear_decomposition(sub.graph, false), sub, false);
    }
    case ProblemKind::kFst:
      return block_tree_json(g, sol.edges, inst.terminals);
  }
  return {};
}

json make_report(const Instance& inst, const RunSettings& settings, const Solution& sol, double elapsed_ms,
                 const std::optional<OracleCheck>& oracle) {
  json report;
  report["status"] = sol.exact ? "optimal" : "approximate";
  report["problem"] = std::string(to_string(settings.kind));
  report["optimal_or_ratio_bound"] =
      sol.exact ? std::string("optimal") : to_decimal_string(Cost(1 + settings.epsilon));
  report["edges"] = sol.edges.ids();
  report["size"] = sol.size();
  report["cost"] = to_decimal_string(sol.cost);
  report["certificate"] = make_certificate(inst, settings.kind, sol);

  const SolveStats& s = sol.stats;
  report["stats"] = {{"iterations", s.iterations},
                     {"candidates", s.candidates},
                     {"cycle_calls", s.cycle_calls},
                     {"path_calls", s.path_calls},
                     {"memo_hits", s.memo_hits},
                     {"subsolver_calls", s.subsolver_calls},
                     {"threshold_probes", s.threshold_probes},
                     {"gadget_nodes", s.gadget_nodes},
                     {"incumbent_trace", s.incumbent_trace},
                     {"elapsed_ms", elapsed_ms}};
  report["settings"] = {{"seed", settings.seed},
                        {"epsilon", to_decimal_string(settings.epsilon)},
                        {"eta", settings.eta},
                        {"threads", settings.threads},
                        {"mode", mode_name(settings.mode)}};
  if (sol.scaling) {
    const ScalingInfo& sc = *sol.scaling;
    report["scaling"] = {{"beta", to_decimal_string(sc.beta)},
                         {"mu", to_decimal_string(sc.mu)},
                         {"lower_bound", to_decimal_string(sc.lower_bound)},
                         {"passes", sc.passes},
                         {"gadget_nodes", sc.gadget_nodes},
                         {"node_budget", sc.node_budget}};
  } else {
    report["scaling"] = nullptr;
  }
  if (oracle) {
    json o = {{"agreement", oracle->agreement}, {"note", oracle->note}};
    o["oracle_cost"] = oracle->oracle_cost ? json(to_decimal_string(*oracle->oracle_cost)) : json(nullptr);
    report["oracle"] = o;
  } else {
    report["oracle"] = nullptr;
  }
  return report;
}

json make_failure_report(const RunSettings& settings, const std::string& status, const std::string& message) {
  return {{"status", status},
          {"problem", std::string(to_string(settings.kind))},
          {"message", message},
          {"settings",
           {{"seed", settings.seed},
            {"epsilon", to_decimal_string(settings.epsilon)},
            {"eta", settings.eta},
            {"threads", settings.threads},
            {"mode", mode_name(settings.mode)}}}};
}

std::string validate_report(const Instance& inst, const json& report) {
  try {
    const Graph& g = inst.graph;
    auto status = report.at("status").get<std::string>();
    if (status != "optimal" && status != "approximate") return "not a success report";
    ProblemKind kind = parse_problem_kind(report.at("problem").get<std::string>());

    EdgeSet edges(static_cast<std::size_t>(g.num_edges()));
    for (EdgeId e : report.at("edges").get<std::vector<EdgeId>>()) {
      if (e < 0 || e >= g.num_edges()) return "edge id out of range";
      if (edges.contains(e)) return "edge listed twice";
      edges.insert(e);
    }
    if (report.at("size").get<std::size_t>() != edges.size()) return "size field mismatch";
    if (parse_decimal(report.at("cost").get<std::string>()) != g.cost_of(edges)) return "cost field mismatch";

    const json& cert = report.at("certificate");
    auto type = cert.at("type").get<std::string>();
    if (type == "empty") {
      if (!edges.empty()) return "empty certificate for a non-empty solution";
      bool trivial = (kind == ProblemKind::kFst || kind == ProblemKind::k2ecs) && inst.terminals.size() <= 1;
      return trivial ? std::string() : "empty solution is not feasible";
    }
    switch (kind) {
      case ProblemKind::kCycle:
        if (type != "cycle") return "wrong certificate type";
        return check_cycle_order(g, edges, inst.terminals, cert.at("node_order"));
      case ProblemKind::k2ncs:
        if (type != "ear_decomposition") return "wrong certificate type";
        return check_ears(g, edges, inst.terminals, cert, true);
      case ProblemKind::k2ecs:
        if (type != "ear_decomposition") return "wrong certificate type";
        return check_ears(g, edges, inst.terminals, cert, false);
      case ProblemKind::kFst:
        if (type != "block_tree") return "wrong certificate type";
        if (!fst_feasible(g, edges, inst.terminals)) return "edge set is not a feasible FST solution";
        return check_block_tree_cert(g, edges, inst.terminals, cert);
    }
  } catch (const std::exception& ex) {
    return std::string("malformed report: ") + ex.what();
  }
  return "unknown problem kind";
}

}  // namespace snd
