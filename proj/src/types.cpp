#include "snd/types.hpp"

#include <cctype>

namespace snd {

using boost::multiprecision::cpp_int;

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kCycle: return "cycle";
    case ProblemKind::k2ncs: return "2ncs";
    case ProblemKind::k2ecs: return "2ecs";
    case ProblemKind::kFst: return "kfst";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "cycle") return ProblemKind::kCycle;
  if (text == "2ncs") return ProblemKind::k2ncs;
  if (text == "2ecs") return ProblemKind::k2ecs;
  if (text == "kfst" || text == "fst") return ProblemKind::kFst;
  throw Error(ErrorCode::kInvalidArgument, "unknown problem kind '" + std::string(text) + "'");
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotTwoConnected: return "NotTwoConnected";
    case ErrorCode::kTerminalMissing: return "TerminalMissing";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kTooFewAnchors: return "TooFewAnchors";
    case ErrorCode::kNoCycle: return "NoCycle";
    case ErrorCode::kNoPath: return "NoPath";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kSubcallFailed: return "SubcallFailed";
    case ErrorCode::kAlreadyModified: return "AlreadyModified";
    case ErrorCode::kNotModified: return "NotModified";
    case ErrorCode::kNoProtectedPath: return "NoProtectedPath";
    case ErrorCode::kInfiniteMst: return "InfiniteMst";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSemanticError: return "SemanticError";
    case ErrorCode::kSpecInfeasible: return "SpecInfeasible";
    case ErrorCode::kPluginRejected: return "PluginRejected";
  }
  return "?";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

// Accepts [-]digits[.digits] and [-]digits/digits.
Cost parse_decimal(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::kParseError, "malformed number '" + std::string(text) + "'");
  };
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Cost value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    cpp_int d{std::string(den)};
    if (d == 0) throw bad();
    value = Cost(cpp_int{std::string(num)}, d);
  } else {
    auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    if (!whole.empty() && !all_digits(whole)) throw bad();
    if (dot != std::string_view::npos && !all_digits(frac)) throw bad();
    cpp_int num = whole.empty() ? cpp_int(0) : cpp_int(std::string(whole));
    cpp_int den = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    value = Cost(num, den);
  }
  return negative ? Cost(-value) : value;
}

std::string to_decimal_string(const Cost& value) {
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  bool negative = num < 0;
  if (negative) num = -num;

  cpp_int rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  std::string sign = negative ? "-" : "";
  if (rest != 1) return sign + num.str() + "/" + den.str();

  int digits = std::max(twos, fives);
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  cpp_int scaled = num * (scale / den);
  std::string s = scaled.str();
  if (digits == 0) return sign + s;
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return sign + s;
}

cpp_int ceil_to_int(const Cost& value) {
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  cpp_int q = num / den;  // truncates toward zero
  if (num % den != 0 && num > 0) q += 1;
  return q;
}

}  // namespace snd
