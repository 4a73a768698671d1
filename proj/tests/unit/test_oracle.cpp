#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "kysharp/error.hpp"
#include "kysharp/optimum.hpp"
#include "kysharp/oracle.hpp"

using namespace kysharp;
using namespace kysharp::oracle;
using std::numbers::pi;

namespace {

CVector spinor(std::initializer_list<std::complex<double>> v) {
  CVector out(static_cast<int>(v.size()));
  int i = 0;
  for (auto x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("Funk-Hecke residuals") {
    CHECK(funk_hecke_residual([](double) { return 1.0; }, 0, 0, 0.3, 1.0) < 1e-10);
    CHECK(funk_hecke_residual([](double t) { return t * t * t; }, 5, 2, 0.9, 2.0) < 1e-10);
    for (int k = 0; k <= 6; ++k)
      for (int n = -k; n <= k; ++n)
        CHECK(funk_hecke_residual([](double t) { return std::exp(-(1 - t)); }, k, n, 0.4 + 0.3 * k, 0.2 * n) < 1e-8);
  }

  TEST_CASE("mode validation") {
    const CVector s4 = spinor({1.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(gaussian_bump_mode(3, 1, 3, 0.0, 2.0, 0.3, s4), Error);
    CHECK_THROWS_AS(gaussian_bump_mode(4, 0, 0, 0.0, 2.0, 0.3, s4), Error);
    CHECK_THROWS_AS(gaussian_bump_mode(3, 0, 0, 0.0, 2.0, 0.3, spinor({1.0, 0.0})), Error);
    CHECK_NOTHROW(gaussian_bump_mode(2, -2, 0, 0.0, 2.0, 0.3, spinor({1.0, 0.0})));
  }

  TEST_CASE("spectral norm is invariant under a global phase") {
    const ProblemSpec spec = make_problem(3, WeightSpec::gaussian(), "dirac", 1.0);
    const CVector s = spinor({1.0, {0.0, 0.5}, 0.25, -0.5});
    const double base = norm_spectral(gaussian_bump_mode(3, 1, -1, 1.0, 2.0, 0.3, s), spec);
    const double turned =
        norm_spectral(gaussian_bump_mode(3, 1, -1, 1.0, 2.0, 0.3, CVector(std::polar(1.0, 0.7) * s)), spec);
    CHECK(std::abs(base - turned) <= 1e-12 * base);
  }

  TEST_CASE("flat massless case attains the bound for any profile") {
    const ProblemSpec spec = make_problem(3, WeightSpec::type_b(2.0), "dirac", 0.0);
    const double c = dirac_constant(spec).value;
    for (double center : {0.7, 2.0, 5.0}) {
      const auto mode = gaussian_bump_mode(3, 0, 0, 0.0, center, 0.2, spinor({1.0, 0.3, -0.2, 0.6}));
      const InequalitySample s = inequality_sample({mode}, spec, c);
      CHECK(s.ratio == doctest::Approx(s.bound).epsilon(1e-9));
      CHECK(s.within);
    }
  }

  TEST_CASE("massive concentrating profiles approach the bound from below") {
    const ProblemSpec spec = make_problem(3, WeightSpec::type_b(2.0), "dirac", 1.0);
    const double c = dirac_constant(spec).value;
    // +phi eigenvector of m sigma_3 (x) sigma_3 + r sigma_1 (x) I at r -> 0 is e_1
    double last = 0.0;
    for (double center : {0.4, 0.1, 0.02}) {
      const auto mode = gaussian_bump_mode(3, 0, 0, 1.0, center, center / 8, spinor({1.0, 0.0, 0.0, 0.0}));
      const InequalitySample s = inequality_sample({mode}, spec, c);
      CHECK(s.within);
      CHECK(s.ratio > last);
      last = s.ratio;
    }
    CHECK(last == doctest::Approx(2 * pi * std::pow(2 * pi, 2) * c).epsilon(2e-2));
  }

  TEST_CASE("random multi-mode input stays below the bound") {
    const ProblemSpec spec = make_problem(3, WeightSpec::type_b(2.0), "dirac", 0.5);
    const double c = dirac_constant(spec).value;
    std::vector<ModeInput> modes;
    const int idx[5][2] = {{0, 0}, {0, -1}, {1, 0}, {2, -3}, {3, 1}};
    for (int i = 0; i < 5; ++i)
      modes.push_back(gaussian_bump_mode(3, idx[i][0], idx[i][1], 0.5, 0.5 + i, 0.3,
                                         spinor({1.0, {0.1 * i, 1.0}, -0.5, 0.2 * i})));
    const InequalitySample s = inequality_sample(modes, spec, c);
    CHECK(s.within);
    CHECK(s.ratio <= s.bound * (1 + 1e-9));
  }

  TEST_CASE("direct and spectral norms agree on a small box") {
    const ProblemSpec spec = make_problem(3, WeightSpec::gaussian(), "dirac", 1.0);
    const auto mode = gaussian_bump_mode(3, 0, 0, 1.0, 2.0, 0.3, spinor({1.0, 0.5, 0.25, -0.5}));
    const DirectResult direct = norm_direct(mode, spec, TruncationBox{});
    const double spectral = norm_spectral(mode, spec);
    CHECK(std::abs(direct.value - spectral) <= 0.05 * spectral);
    CHECK(direct.tail_fraction < 0.02);
    CHECK(!direct.trace.empty());
  }

  TEST_CASE("zero profile gives zero") {
    const ProblemSpec spec = make_problem(2, WeightSpec::gaussian(), "dirac", 0.0);
    const auto mode = gaussian_bump_mode(2, 0, 0, 0.0, 2.0, 0.3, spinor({0.0, 0.0}));
    CHECK(norm_spectral(mode, spec) == 0.0);
    CHECK(norm_direct(mode, spec, TruncationBox{}).value == 0.0);
  }

  TEST_CASE("truncation failure is reported") {
    const ProblemSpec spec = make_problem(2, WeightSpec::gaussian(), "dirac", 0.0);
    const auto mode = gaussian_bump_mode(2, 0, 0, 0.0, 2.0, 0.3, spinor({1.0, 0.5}));
    TruncationBox box;
    box.T = 2.0;
    box.T_limit = 4.0;
    box.tail_budget = 1e-12;
    try {
      norm_direct(mode, spec, box);
      FAIL("expected truncation_not_converged");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::truncation_not_converged);
    }
  }

  TEST_CASE("scenario files") {
    std::istringstream good(
        "name = t\nd = 3\nk = 1\nn = 0\nm = 1\nfamily = gaussian\nprofile = gaussian_bump\n"
        "center = 2\nwidth = 0.3\nspinor = 1 0.5 0.25 -0.5\nT = 20\n");
    const Scenario sc = read_scenario(good, "t.kv");
    CHECK(sc.name == "t");
    CHECK(sc.input.k == 1);
    CHECK(sc.box.T == 20.0);
    CHECK(sc.budget == 0.05);

    std::istringstream bad("name = t\nd = 3\nk = 1\nspinor = 1 x\n");
    try {
      read_scenario(bad, "bad.kv");
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse_error);
      CHECK(std::string(e.what()).find("bad.kv:") != std::string::npos);
    }
  }
}
