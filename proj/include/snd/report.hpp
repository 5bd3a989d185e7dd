#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "snd/io.hpp"
#include "snd/solution.hpp"

namespace snd {

struct RunSettings {
  ProblemKind kind = ProblemKind::k2ncs;
  Cost epsilon = Cost(1, 10);
  double eta = 0.01;
  std::uint64_t seed = 1;
  SearchMode mode = SearchMode::kAudit;
  int threads = 1;
};

struct OracleCheck {
  std::string agreement;  // exact | within_ratio | mismatch | skipped
  std::optional<Cost> oracle_cost;
  std::string note;
};

/// Structural certificate of a solution: cycle node order, ear
/// decomposition (2NCS, 2ECS), or block tree with protected paths (k-FST).
nlohmann::json make_certificate(const Instance& inst, ProblemKind kind, const Solution& sol);

nlohmann::json make_report(const Instance& inst, const RunSettings& settings, const Solution& sol,
                           double elapsed_ms, const std::optional<OracleCheck>& oracle);

nlohmann::json make_failure_report(const RunSettings& settings, const std::string& status, const std::string& message);

/// Re-validates a success report against the instance using only the
/// report's contents. Empty string when valid, else the first problem.
std::string validate_report(const Instance& inst, const nlohmann::json& report);

}  // namespace snd
