#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace ere::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitNoSignal = 4;

/// Runs one command line (without the program name). Data files and a
/// manifest.json go to --out; nothing is written unless the command succeeds.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code_for(const std::exception& e);

}  // namespace ere::cli
