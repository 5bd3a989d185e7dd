#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snd/cli.hpp"
#include "snd/io.hpp"
#include "snd/oracle.hpp"
#include "snd/report.hpp"
#include "snd/solver_2nc.hpp"

using namespace snd;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

int run(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o;
  std::ostringstream e;
  int code = cli_main(args, o, e);
  out = o.str();
  return code;
}

}  // namespace

TEST_CASE("parse a triangle") {
  auto inst = parse_instance("# triangle\np cycle 3 3 3\nt 0\nt 1\nt 2\ne 0 1 1 U\ne 1 2 1.5 S\ne 2 0 1/2 U\n");
  CHECK(inst.graph.num_edges() == 3);
  CHECK(inst.terminals == NodeSet{0, 1, 2});
  CHECK(inst.graph.edge(1).cost == Cost(3, 2));
  CHECK(inst.graph.edge(1).safe());
  CHECK(inst.graph.edge(2).cost == Cost(1, 2));
}

TEST_CASE("parse errors carry the line and kind") {
  try {
    parse_instance("p cycle 2 1 0\ne 0 1 -3 U\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::kSemanticError);
    CHECK(e.line() == 2);
  }
  try {
    parse_instance("p cycle 2 1 0\ne 0 one 3 U\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::kParseError);
  }
  CHECK_THROWS_AS(parse_instance("p cycle 2 1 0\ne 0 5 1 U\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("e 0 1 1 U\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("p cycle 2 2 0\ne 0 1 1 U\n"), ParseError);
}

TEST_CASE("parallel edge records stay distinct") {
  auto inst = parse_instance("p 2ecs 2 2 2\nt 0\nt 1\ne 0 1 1 U\ne 0 1 1 U\n");
  CHECK(inst.graph.num_edges() == 2);
  CHECK(inst.graph.edge(0).id != inst.graph.edge(1).id);
}

TEST_CASE("round trip") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.weighted = seed % 2 == 0;
    Instance a = generate_instance(spec);
    Instance b = parse_instance(write_instance(a));
    CHECK(same_instance(a, b));
    CHECK(write_instance(b) == write_instance(a));
  }
}

TEST_CASE("generator") {
  GeneratorSpec spec;
  spec.seed = 1;
  CHECK(write_instance(generate_instance(spec)) == write_instance(generate_instance(spec)));
  spec.seed = 2;
  CHECK(write_instance(generate_instance(spec)) != write_instance(generate_instance(GeneratorSpec{})));

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorSpec s{ProblemKind::k2ncs, 8, 12, 3, seed % 2 == 1, 50, 0.5, seed};
    Instance inst = generate_instance(s);
    CHECK(inst.graph.num_edges() == 12);
    CHECK(terminals_share_2nc_block(inst.graph, inst.terminals));
    for (ProblemKind kind : {ProblemKind::k2ncs, ProblemKind::k2ecs, ProblemKind::kFst}) {
      CHECK(oracle_feasible(inst.graph, inst.graph.all_edges(),
                            {oracle_kind(kind), inst.terminals, kNoNode, kNoNode}));
    }
    // A cycle instance is feasible through its planted cycle.
    CHECK(try_oracle_min_subgraph(inst.graph, {OracleKind::kCycle, inst.terminals, kNoNode, kNoNode}, false));
  }

  GeneratorSpec low;
  low.n = 8;
  low.m = 6;
  CHECK_THROWS_AS(generate_instance(low), Error);
}

TEST_CASE("CLI solve, verify and exit codes") {
  GeneratorSpec spec;
  spec.seed = 1;
  TempFile inst("snd_cli_inst.txt", write_instance(generate_instance(spec)));
  std::string out;
  for (std::string kind : {"cycle", "2ncs", "2ecs", "kfst"}) {
    REQUIRE(run({"solve", kind, inst.path.string(), "--oracle-check"}, out) == kExitOk);
    auto report = nlohmann::json::parse(out);
    CHECK(report["oracle"]["agreement"] == "exact");
    CHECK(report["settings"]["seed"] == 1);
    Instance parsed = read_instance_file(inst.path.string());
    CHECK(validate_report(parsed, report) == "");

    TempFile rep("snd_cli_report.json", out);
    std::string verdict;
    CHECK(run({"verify", inst.path.string(), rep.path.string()}, verdict) == kExitOk);
    CHECK(verdict == "valid\n");

    // A tampered cost must be caught.
    report["cost"] = "0";
    CHECK_FALSE(validate_report(parsed, report).empty());
  }

  TempFile tree("snd_cli_tree.txt", "p cycle 3 2 2\nt 0\nt 2\ne 0 1 1 U\ne 1 2 1 U\n");
  CHECK(run({"solve", "cycle", tree.path.string()}, out) == kExitInfeasible);
  CHECK(nlohmann::json::parse(out)["status"] == "infeasible");

  TempFile bad("snd_cli_bad.txt", "p cycle 3 1 0\ne 0 1 x U\n");
  CHECK(run({"solve", "cycle", bad.path.string()}, out) == kExitUsage);
  CHECK(run({"solve", "nonsense", inst.path.string()}, out) == kExitUsage);
  CHECK(run({"solve", "2ncs", inst.path.string(), "--mode", "slow"}, out) == kExitUsage);
  CHECK(run({}, out) == kExitUsage);

  // A zero time limit is "no limit"; a tiny one on a large instance runs out.
  GeneratorSpec big{ProblemKind::k2ncs, 40, 120, 6, false, 50, 0.5, 3};
  TempFile large("snd_cli_large.txt", write_instance(generate_instance(big)));
  CHECK(run({"solve", "2ncs", large.path.string(), "--mode", "audit", "--time-limit", "0.05"}, out) == kExitBudget);
}

TEST_CASE("generate through the CLI is deterministic") {
  std::string a;
  std::string b;
  CHECK(run({"generate", "-n", "9", "-m", "15", "-k", "4", "--seed", "5", "--weighted"}, a) == kExitOk);
  CHECK(run({"generate", "-n", "9", "-m", "15", "-k", "4", "--seed", "5", "--weighted"}, b) == kExitOk);
  CHECK(a == b);
  CHECK(run({"generate", "-n", "9", "-m", "3"}, a) == kExitUsage);
}

TEST_CASE("weighted reports carry scaling data and validate") {
  GeneratorSpec spec{ProblemKind::k2ncs, 7, 10, 3, true, 50, 0.5, 9};
  Instance inst = generate_instance(spec);
  RunSettings settings;
  settings.kind = ProblemKind::k2ncs;
  settings.mode = SearchMode::kFast;
  Solution sol = solve_2ncs_weighted(inst.graph, inst.terminals, settings.epsilon, {.mode = SearchMode::kFast});
  auto report = make_report(inst, settings, sol, 1.0, std::nullopt);
  CHECK(validate_report(inst, report) == "");
  if (!sol.exact) {
    CHECK(report["optimal_or_ratio_bound"] == "1.1");
    CHECK(report["scaling"].is_object());
  }
}
