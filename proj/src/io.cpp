#include "snd/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace snd {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view field, int line, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(ErrorCode::kParseError, line, std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

// Uniform integer in [0, bound) from the raw engine output; fixed mapping so
// files are identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  bool have_header = false;
  long long declared_m = 0;
  long long declared_k = 0;
  std::vector<NodeId> terms;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto f = split_fields(line);
    if (f.empty() || f[0].front() == '#' || f[0] == "c") continue;

    if (f[0] == "p") {
      if (have_header) throw ParseError(ErrorCode::kParseError, line_no, "duplicate header");
      if (f.size() != 5) throw ParseError(ErrorCode::kParseError, line_no, "header needs: p <kind> <n> <m> <k>");
      try {
        inst.kind = parse_problem_kind(f[1]);
      } catch (const Error&) {
        throw ParseError(ErrorCode::kParseError, line_no, "unknown problem kind '" + std::string(f[1]) + "'");
      }
      long long n = parse_int(f[2], line_no, "node count");
      declared_m = parse_int(f[3], line_no, "edge count");
      declared_k = parse_int(f[4], line_no, "terminal count");
      if (n < 0 || declared_m < 0 || declared_k < 0) {
        throw ParseError(ErrorCode::kSemanticError, line_no, "negative count in header");
      }
      inst.graph = Graph(static_cast<NodeId>(n));
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(ErrorCode::kParseError, line_no, "record before the 'p' header");

    if (f[0] == "t") {
      if (f.size() != 2) throw ParseError(ErrorCode::kParseError, line_no, "terminal needs: t <node>");
      long long v = parse_int(f[1], line_no, "node");
      if (v < 0 || v >= inst.graph.num_nodes()) {
        throw ParseError(ErrorCode::kSemanticError, line_no, "terminal " + std::to_string(v) + " out of range");
      }
      if (std::find(terms.begin(), terms.end(), static_cast<NodeId>(v)) != terms.end()) {
        throw ParseError(ErrorCode::kSemanticError, line_no, "duplicate terminal " + std::to_string(v));
      }
      terms.push_back(static_cast<NodeId>(v));
    } else if (f[0] == "e") {
      if (f.size() != 5) throw ParseError(ErrorCode::kParseError, line_no, "edge needs: e <u> <v> <cost> <S|U>");
      long long u = parse_int(f[1], line_no, "node");
      long long v = parse_int(f[2], line_no, "node");
      Cost cost;
      try {
        cost = parse_decimal(f[3]);
      } catch (const Error&) {
        throw ParseError(ErrorCode::kParseError, line_no, "bad cost '" + std::string(f[3]) + "'");
      }
      Safety safety;
      if (f[4] == "S" || f[4] == "s") {
        safety = Safety::kSafe;
      } else if (f[4] == "U" || f[4] == "u") {
        safety = Safety::kUnsafe;
      } else {
        throw ParseError(ErrorCode::kParseError, line_no, "safety flag must be S or U");
      }
      if (cost < 0) throw ParseError(ErrorCode::kSemanticError, line_no, "negative cost");
      if (u < 0 || v < 0 || u >= inst.graph.num_nodes() || v >= inst.graph.num_nodes()) {
        throw ParseError(ErrorCode::kSemanticError, line_no, "edge endpoint out of range");
      }
      if (u == v) throw ParseError(ErrorCode::kSemanticError, line_no, "self-loop");
      inst.graph.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), cost, safety);
    } else {
      throw ParseError(ErrorCode::kParseError, line_no, "unknown record '" + std::string(f[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(ErrorCode::kParseError, line_no, "missing 'p' header");
  if (inst.graph.num_edges() != declared_m) {
    throw ParseError(ErrorCode::kSemanticError, line_no,
                     "header declares " + std::to_string(declared_m) + " edges, found " +
                         std::to_string(inst.graph.num_edges()));
  }
  if (static_cast<long long>(terms.size()) != declared_k) {
    throw ParseError(ErrorCode::kSemanticError, line_no,
                     "header declares " + std::to_string(declared_k) + " terminals, found " +
                         std::to_string(terms.size()));
  }
  inst.terminals = make_node_set(std::move(terms));
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "p " << to_string(inst.kind) << ' ' << inst.graph.num_nodes() << ' ' << inst.graph.num_edges() << ' '
      << inst.terminals.size() << '\n';
  for (NodeId t : inst.terminals) out << "t " << t << '\n';
  for (const Edge& e : inst.graph.edges()) {
    out << "e " << e.u << ' ' << e.v << ' ' << to_decimal_string(e.cost) << ' ' << (e.safe() ? 'S' : 'U') << '\n';
  }
  return out.str();
}

bool same_instance(const Instance& a, const Instance& b) {
  if (a.kind != b.kind || a.terminals != b.terminals) return false;
  if (a.graph.num_nodes() != b.graph.num_nodes() || a.graph.num_edges() != b.graph.num_edges()) return false;
  for (EdgeId e = 0; e < a.graph.num_edges(); ++e) {
    const Edge& x = a.graph.edge(e);
    const Edge& y = b.graph.edge(e);
    if (x.u != y.u || x.v != y.v || x.cost != y.cost || x.safety != y.safety) return false;
  }
  return true;
}

Instance generate_instance(const GeneratorSpec& spec) {
  const int n = spec.n;
  const int k = spec.k;
  if (n < 3) throw Error(ErrorCode::kSpecInfeasible, "need at least 3 nodes for a planted cycle");
  if (k < 1 || k > n) throw Error(ErrorCode::kSpecInfeasible, "terminal count must lie in [1, n]");
  if (spec.m < n) {
    throw Error(ErrorCode::kSpecInfeasible, "m = " + std::to_string(spec.m) + " is below the planted minimum n = " +
                                                std::to_string(n));
  }
  if (spec.unsafe_fraction < 0.0 || spec.unsafe_fraction > 1.0) {
    throw Error(ErrorCode::kSpecInfeasible, "unsafe fraction must lie in [0, 1]");
  }
  if (spec.weighted && spec.max_cost < 0) throw Error(ErrorCode::kSpecInfeasible, "negative cost bound");

  std::mt19937_64 rng(spec.seed);
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw(rng, i)]);

  Instance inst;
  inst.kind = spec.kind;
  inst.graph = Graph(n);
  inst.terminals = make_node_set(std::vector<NodeId>(order.begin(), order.begin() + k));

  // Planted cycle: the terminals plus a few extra nodes, in shuffled order.
  // Each node off the cycle costs two edges, so m >= 2n - cycle_len.
  const int lo = std::max(3, k);
  const int cycle_len =
      std::max(lo + static_cast<int>(draw(rng, static_cast<std::uint64_t>(n - lo + 1)) / 2), 2 * n - spec.m);
  std::vector<NodeId> cycle(order.begin(), order.begin() + cycle_len);
  for (std::size_t i = cycle.size(); i > 1; --i) std::swap(cycle[i - 1], cycle[draw(rng, i)]);

  std::set<std::pair<NodeId, NodeId>> used;
  auto add = [&](NodeId u, NodeId v) {
    Cost cost = spec.weighted ? Cost(static_cast<long long>(draw(rng, static_cast<std::uint64_t>(spec.max_cost) + 1)))
                              : Cost(1);
    bool unsafe = static_cast<double>(draw(rng, 1000000)) < spec.unsafe_fraction * 1000000.0;
    inst.graph.add_edge(u, v, cost, unsafe ? Safety::kUnsafe : Safety::kSafe);
    used.insert(std::minmax(u, v));
  };
  for (int i = 0; i < cycle_len; ++i) add(cycle[static_cast<std::size_t>(i)], cycle[static_cast<std::size_t>((i + 1) % cycle_len)]);

  // Every other node becomes an open ear on two distinct earlier nodes, which
  // keeps the whole graph 2-node-connected.
  for (int i = cycle_len; i < n; ++i) {
    NodeId v = order[static_cast<std::size_t>(i)];
    std::size_t a = draw(rng, static_cast<std::uint64_t>(i));
    std::size_t b = draw(rng, static_cast<std::uint64_t>(i - 1));
    if (b >= a) ++b;
    add(order[a], v);
    add(order[b], v);
  }

  const long long simple_limit = static_cast<long long>(n) * (n - 1) / 2;
  while (inst.graph.num_edges() < spec.m) {
    NodeId u = static_cast<NodeId>(draw(rng, static_cast<std::uint64_t>(n)));
    NodeId v = static_cast<NodeId>(draw(rng, static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    if (static_cast<long long>(used.size()) < simple_limit && used.count(std::minmax(u, v))) continue;
    add(u, v);
  }
  if (spec.spread_terminals) {
    std::vector<NodeId> pick = order;
    for (std::size_t i = pick.size(); i > 1; --i) std::swap(pick[i - 1], pick[draw(rng, i)]);
    inst.terminals = make_node_set(std::vector<NodeId>(pick.begin(), pick.begin() + k));
  }
  return inst;
}

}  // namespace snd
