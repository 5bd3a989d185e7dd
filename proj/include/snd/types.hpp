#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace snd {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr EdgeId kNoEdge = -1;

/// Exact non-negative edge cost. All solver arithmetic stays in this type.
using Cost = boost::multiprecision::cpp_rational;

enum class Safety : std::uint8_t { kSafe, kUnsafe };

enum class ProblemKind : std::uint8_t { kCycle, k2ncs, k2ecs, kFst };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

enum class ErrorCode {
  kInvalidArgument,
  kNotTwoConnected,
  kTerminalMissing,
  kDisconnected,
  kTooFewAnchors,
  kNoCycle,
  kNoPath,
  kInfeasible,
  kSubcallFailed,
  kAlreadyModified,
  kNotModified,
  kNoProtectedPath,
  kInfiniteMst,
  kBudgetExceeded,
  kParseError,
  kSemanticError,
  kSpecInfeasible,
  kPluginRejected,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the 1-based line number of the offending record.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Rational helpers.
Cost parse_decimal(std::string_view text);
std::string to_decimal_string(const Cost& value);
boost::multiprecision::cpp_int ceil_to_int(const Cost& value);

}  // namespace snd
