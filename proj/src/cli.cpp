#include "snd/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "snd/io.hpp"
#include "snd/oracle.hpp"
#include "snd/report.hpp"
#include "snd/scaling.hpp"
#include "snd/solver_2nc.hpp"
#include "snd/solver_kfst.hpp"
#include "snd/steiner_cycle.hpp"

namespace snd {

namespace {

struct SolveArgs {
  std::string kind;
  std::string path;
  std::string epsilon = "0.1";
  double eta = 0.01;
  std::uint64_t seed = 1;
  bool oracle_check = false;
  std::string mode = "fast";
  int threads = 1;
  double time_limit = 0;
  std::string marker_bound = "2k-4";
};

struct GenerateArgs {
  std::string kind = "2ncs";
  GeneratorSpec spec;
  std::string output;
};

struct VerifyArgs {
  std::string instance;
  std::string report;
};

Solution run_solver(const Instance& inst, const RunSettings& settings, const SolverOptions& opts) {
  const Graph& g = inst.graph;
  const bool weighted = !g.unit_costs();
  switch (settings.kind) {
    case ProblemKind::kCycle: {
      if (!weighted) return min_steiner_cycle(g, inst.terminals, {opts.eta, opts.seed});
      return weighted_steiner_cycle(g, inst.terminals, settings.epsilon, opts.eta, opts.seed);
    }
    case ProblemKind::k2ncs:
      if (!weighted) return solve_2ncs_unweighted(g, inst.terminals, opts);
      return solve_2ncs_weighted(g, inst.terminals, settings.epsilon, opts);
    case ProblemKind::k2ecs:
      return solve_2ecs(g, inst.terminals, weighted ? std::optional<Cost>(settings.epsilon) : std::nullopt, opts);
    case ProblemKind::kFst: {
      FstInstance fst = make_fst_instance(g, inst.terminals);
      if (!weighted) return solve_kfst_unweighted(fst, opts);
      return solve_kfst_weighted(fst, settings.epsilon, opts);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown problem kind");
}

OracleCheck run_oracle(const Instance& inst, const RunSettings& settings, const Solution& sol, double time_limit) {
  OracleCheck check;
  OracleBudget budget;
  if (time_limit > 0) budget.max_millis = std::chrono::milliseconds(static_cast<long long>(time_limit * 1000));
  try {
    auto best = oracle_min_subgraph(inst.graph, inst.terminals, settings.kind, !inst.graph.unit_costs(), budget);
    check.oracle_cost = best.cost;
    if (best.cost == sol.cost) {
      check.agreement = "exact";
    } else if (!sol.exact && sol.cost <= (1 + settings.epsilon) * best.cost) {
      check.agreement = "within_ratio";
    } else {
      check.agreement = "mismatch";
    }
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::kBudgetExceeded) {
      check.agreement = "skipped";
      check.note = "instance exceeds the oracle budget";
    } else {
      check.agreement = "mismatch";
      check.note = ex.what();
    }
  }
  return check;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
    case ErrorCode::kNoCycle:
    case ErrorCode::kNoPath:
      return kExitInfeasible;
    case ErrorCode::kBudgetExceeded:
      return kExitBudget;
    default:
      return kExitUsage;
  }
}

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  RunSettings settings;
  SolverOptions opts;
  try {
    settings.kind = parse_problem_kind(a.kind);
    settings.epsilon = parse_decimal(a.epsilon);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
  if (settings.epsilon <= 0) {
    err << "error: --epsilon must be positive\n";
    return kExitUsage;
  }
  if (!(a.eta > 0 && a.eta <= 1)) {
    err << "error: --eta must lie in (0, 1]\n";
    return kExitUsage;
  }
  if (a.threads < 1) {
    err << "error: --threads must be at least 1\n";
    return kExitUsage;
  }
  settings.eta = opts.eta = a.eta;
  settings.seed = opts.seed = a.seed;
  settings.mode = opts.mode = a.mode == "audit" ? SearchMode::kAudit : SearchMode::kFast;
  settings.threads = opts.threads = a.threads;
  opts.marker_bound = a.marker_bound == "2k" ? MarkerBound::kTwoK : MarkerBound::kTwoKMinusFour;
  if (a.time_limit > 0) {
    opts.deadline = Deadline::after(std::chrono::milliseconds(static_cast<long long>(a.time_limit * 1000)));
  }

  Instance inst;
  try {
    inst = read_instance_file(a.path);
  } catch (const Error& ex) {
    err << "error: " << a.path << ": " << ex.what() << '\n';
    return kExitUsage;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    DeadlineScope scope(opts.deadline);
    Solution sol = run_solver(inst, settings, opts);
    double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::optional<OracleCheck> oracle;
    if (a.oracle_check) oracle = run_oracle(inst, settings, sol, a.time_limit);
    out << make_report(inst, settings, sol, elapsed, oracle).dump(2) << '\n';
    return kExitOk;
  } catch (const Error& ex) {
    int code = exit_code_for(ex.code());
    std::string status = code == kExitInfeasible ? "infeasible" : code == kExitBudget ? "budget_exceeded" : "error";
    out << make_failure_report(settings, status, ex.what()).dump(2) << '\n';
    err << ex.what() << '\n';
    return code;
  }
}

int do_generate(GenerateArgs a, std::ostream& out, std::ostream& err) {
  try {
    a.spec.kind = parse_problem_kind(a.kind);
    std::string text = write_instance(generate_instance(a.spec));
    if (a.output.empty()) {
      out << text;
    } else {
      std::ofstream file(a.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + a.output + "'");
      file << text;
    }
    return kExitOk;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = read_instance_file(a.instance);
    std::ifstream in(a.report);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + a.report + "'");
    auto report = nlohmann::json::parse(in);
    std::string why = validate_report(inst, report);
    if (why.empty()) {
      out << "valid\n";
      return kExitOk;
    }
    out << "invalid: " << why << '\n';
    return kExitInvalid;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and approximate Steiner network design solvers"};
  app.name("sndsolve");
  app.require_subcommand(1);

  SolveArgs solve;
  if (const char* env = std::getenv("SND_THREADS")) {
    try {
      solve.threads = std::stoi(env);
    } catch (const std::exception&) {
      err << "error: SND_THREADS is not an integer\n";
      return kExitUsage;
    }
  }
  auto* sc = app.add_subcommand("solve", "Solve an instance and print a JSON report");
  sc->add_option("kind", solve.kind, "cycle | 2ncs | 2ecs | kfst")
      ->required()
      ->check(CLI::IsMember({"cycle", "2ncs", "2ecs", "kfst"}));
  sc->add_option("input", solve.path, "Instance file")->required();
  sc->add_option("--epsilon", solve.epsilon, "Approximation parameter for weighted instances (decimal)")
      ->capture_default_str();
  sc->add_option("--eta", solve.eta, "Failure probability handed to the cycle engine")->capture_default_str();
  sc->add_option("--seed", solve.seed, "Random seed")->capture_default_str();
  sc->add_flag("--oracle-check", solve.oracle_check, "Also run the brute-force oracle and report agreement");
  sc->add_option("--mode", solve.mode, "Search mode")
      ->check(CLI::IsMember({"fast", "audit"}))
      ->capture_default_str();
  sc->add_option("--threads", solve.threads, "Worker threads (default from SND_THREADS, else 1)")
      ->capture_default_str();
  sc->add_option("--time-limit", solve.time_limit, "Seconds before giving up (0 = none)")->capture_default_str();
  sc->add_option("--marker-bound", solve.marker_bound, "Bound on guessed degree-3 nodes")
      ->check(CLI::IsMember({"2k-4", "2k"}))
      ->capture_default_str();

  GenerateArgs gen;
  auto* gc = app.add_subcommand("generate", "Write a random instance with a planted terminal cycle");
  gc->add_option("--kind", gen.kind, "cycle | 2ncs | 2ecs | kfst")
      ->check(CLI::IsMember({"cycle", "2ncs", "2ecs", "kfst"}))
      ->capture_default_str();
  gc->add_option("-n", gen.spec.n, "Nodes")->capture_default_str();
  gc->add_option("-m", gen.spec.m, "Edges")->capture_default_str();
  gc->add_option("-k", gen.spec.k, "Terminals")->capture_default_str();
  gc->add_flag("--weighted", gen.spec.weighted, "Random integer costs instead of unit costs");
  gc->add_option("--max-cost", gen.spec.max_cost, "Largest cost when weighted")->capture_default_str();
  gc->add_option("--unsafe-fraction", gen.spec.unsafe_fraction, "Share of unsafe edges")->capture_default_str();
  gc->add_option("--seed", gen.spec.seed, "Random seed")->capture_default_str();
  gc->add_flag("--spread-terminals", gen.spec.spread_terminals, "Draw terminals from all nodes, not the planted cycle");
  gc->add_option("-o,--output", gen.output, "Output file (default: standard output)");

  VerifyArgs ver;
  auto* vc = app.add_subcommand("verify", "Re-validate a JSON report against its instance");
  vc->add_option("instance", ver.instance, "Instance file")->required();
  vc->add_option("report", ver.report, "Report file")->required();

  std::vector<std::string> argv_store{"sndsolve"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (sc->parsed()) return do_solve(solve, out, err);
  if (gc->parsed()) return do_generate(gen, out, err);
  return do_verify(ver, out, err);
}

}  // namespace snd
