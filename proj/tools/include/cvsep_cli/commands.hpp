#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cvsep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `cvsep` tool; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit code for a library error kind.
int exit_code_for(int error_kind);

/// Worker count from CVSEP_WORKERS, else the hardware concurrency.
unsigned default_workers();

}  // namespace cvsep::cli
