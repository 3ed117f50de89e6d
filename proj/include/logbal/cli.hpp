#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logbal::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_not_certified = 1,
  exit_usage = 2,
  exit_arithmetic = 3,
};

/// Runs the command line front end. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logbal::cli
