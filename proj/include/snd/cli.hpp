#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace snd {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;     // verify: report does not validate
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitUsage = 64;

/// Entry point of `sndsolve`; args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snd
