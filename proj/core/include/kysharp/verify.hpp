#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kysharp::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Suite names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

/// Runs one suite (specialfn, harmonics, algebra, funk-hecke, equivalence)
/// or every suite for "all". Randomized spot checks draw from `seed`.
/// Throws invalid_parameter for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed = 20240611);

std::vector<CheckResult> specialfn_checks(std::uint64_t seed);
std::vector<CheckResult> harmonics_checks(std::uint64_t seed);
std::vector<CheckResult> algebra_checks(std::uint64_t seed);
std::vector<CheckResult> funk_hecke_checks(std::uint64_t seed);
std::vector<CheckResult> equivalence_checks();

bool all_pass(const std::vector<CheckResult>& results);

/// Fixed-width table: suite, check, residual, tolerance, PASS/FAIL.
void write_table(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace kysharp::verify
