#include <doctest.h>

#include <sstream>

#include "kysharp/error.hpp"
#include "kysharp/verify.hpp"

using namespace kysharp;

namespace {

void require_all_pass(const std::vector<verify::CheckResult>& results) {
  REQUIRE(!results.empty());
  for (const auto& r : results) {
    INFO(r.suite << ": " << r.name << " residual " << r.residual << " tolerance " << r.tolerance);
    CHECK(r.pass);
    CHECK(r.residual <= r.tolerance);
  }
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("special function identities") { require_all_pass(verify::run_suite("specialfn")); }
  TEST_CASE("harmonic identities") { require_all_pass(verify::run_suite("harmonics")); }
  TEST_CASE("Dirac algebra") { require_all_pass(verify::run_suite("algebra")); }
  TEST_CASE("Funk-Hecke") { require_all_pass(verify::run_suite("funk-hecke")); }
  TEST_CASE("other seeds") {
    require_all_pass(verify::algebra_checks(1));
    require_all_pass(verify::harmonics_checks(99));
  }
  TEST_CASE("unknown suite") { CHECK_THROWS_AS(verify::run_suite("nope"), Error); }
  TEST_CASE("table output") {
    std::ostringstream out;
    verify::write_table(out, verify::run_suite("funk-hecke"));
    CHECK(out.str().find("PASS") != std::string::npos);
  }
}
