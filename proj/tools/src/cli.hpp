#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kysharp::cli {

enum ExitCode : int {
  ok = 0,
  usage_error = 1,
  sup_not_localized = 2,
  quadrature_failure = 3,
  expectation_mismatch = 4,
  verify_failure = 5,
  truncation_not_converged = 6,
};

/// Runs the kysharp command line with data on `out` and diagnostics on `err`.
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory searched for bundled oracle scenarios given by name.
std::string scenario_dir();

}  // namespace kysharp::cli
