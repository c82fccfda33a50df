#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tlo::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInfeasible = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tlo::cli
