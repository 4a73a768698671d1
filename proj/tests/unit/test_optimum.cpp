#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kysharp/error.hpp"
#include "kysharp/lambda.hpp"
#include "kysharp/optimum.hpp"

using namespace kysharp;
using std::numbers::pi;

namespace {

SearchPolicy numeric() {
  SearchPolicy p;
  p.prefer_closed_form = false;
  return p;
}

}  // namespace

TEST_SUITE("optimum") {
  TEST_CASE("policy validation") {
    SearchPolicy p;
    CHECK_NOTHROW(validate(p));
    p.r_min = 10.0;
    p.r_max = 1.0;
    CHECK_THROWS_AS(validate(p), Error);
    p = {};
    p.k_max = 0;
    CHECK_THROWS_AS(validate(p), Error);
  }

  TEST_CASE("closed forms") {
    CHECK(closed_form::c_k(3, 2.0, 0) == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(closed_form::c_k(3, 2.0, 1) == doctest::Approx(2 * pi / 3).epsilon(1e-15));
    CHECK(closed_form::c_k(4, 2.0, 0) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(closed_form::type_b(3, 2.0) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(closed_form::type_c(2.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(*closed_form::type_a_s2(3) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(*closed_form::type_a_s2(5) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(closed_form::type_b_dirac_gamma(3, 2.0, 1.0) == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(closed_form::type_b_dirac_gamma(3, 2.0, 0.0) == doctest::Approx(4 * pi / 3).epsilon(1e-15));
    for (int d : {2, 3, 4})
      for (double s : {1.2, 1.5, 1.9})
        for (double m : {0.0, 1.0})
          CHECK(closed_form::type_b_dirac_gamma(d, s, m) ==
                doctest::Approx(closed_form::type_b_dirac_ck(d, s, m)).epsilon(1e-13));
  }

  TEST_CASE("synthetic single peak") {
    const CurveBatch peak = [](double r, int k_max, std::vector<double>* errors) {
      std::vector<double> v;
      for (int k = 0; k <= k_max; ++k) v.push_back(r * r * std::exp(-r) / (1.0 + k));
      if (errors) errors->assign(v.size(), 0.0);
      return v;
    };
    const SupResult res = sup_search(peak, SearchPolicy{});
    CHECK(res.k == 0);
    CHECK(res.location == Location::interior);
    CHECK(res.r == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(res.value == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(res.stopped_early);
    CHECK(extremiser_diagnosis(res, res.value, SearchPolicy{}) == Extremiser::none_detected);
  }

  TEST_CASE("growth at the largest k is not localized") {
    const CurveBatch growing = [](double, int k_max, std::vector<double>* errors) {
      std::vector<double> v;
      for (int k = 0; k <= k_max; ++k) v.push_back(1.0 + k);
      if (errors) errors->assign(v.size(), 0.0);
      return v;
    };
    SearchPolicy p;
    p.k_max = 20;
    p.points_per_decade = 4;
    try {
      sup_search(growing, p);
      FAIL("expected sup_not_localized");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::sup_not_localized);
    }
  }

  TEST_CASE("Schrodinger constants") {
    const ProblemSpec a = make_problem(3, WeightSpec::type_a(2.0), "schrodinger", 0);
    const ConstantReport ac = schrodinger_constant(a);
    CHECK(ac.method == Method::closed_form);
    CHECK(ac.value == doctest::Approx(pi).epsilon(1e-15));
    CHECK(ac.extremiser == Extremiser::none_detected);
    CHECK(ac.error_estimate == 0.0);
    const ConstantReport an = schrodinger_constant(a, numeric());
    CHECK(an.method == Method::numeric_sup);
    CHECK(an.value <= pi + 1e-6);
    CHECK(an.value >= pi - 2e-2);
    CHECK(an.extremiser == Extremiser::none_detected);

    const ProblemSpec b = make_problem(3, WeightSpec::type_b(2.0), "schrodinger", 0);
    CHECK(schrodinger_constant(b).value == doctest::Approx(pi).epsilon(1e-15));
    const ConstantReport bn = schrodinger_constant(b, numeric());
    CHECK(bn.value == doctest::Approx(pi).epsilon(1e-6));
    CHECK(bn.location == Location::flat_interval);
    CHECK(bn.extremiser == Extremiser::exists_flat_interval);
    // the monotone-k stop must not fire before k = 8 on power weights
    CHECK(bn.per_k_maxima.size() >= 9);

    const ProblemSpec c = make_problem(3, WeightSpec::type_c(2.0), "schrodinger", 0);
    CHECK(schrodinger_constant(c).value == doctest::Approx(pi / 2).epsilon(1e-15));
    const ConstantReport cn = schrodinger_constant(c, numeric());
    CHECK(cn.value == doctest::Approx(pi / 2).epsilon(1e-2));
    CHECK(cn.location == Location::limit_infinity);
  }

  TEST_CASE("relativistic constant is twice the reduced one") {
    for (double m : {0.0, 1.0}) {
      const ProblemSpec rel = make_problem(3, WeightSpec::type_c(3.0), "relativistic", m);
      const double full = schrodinger_constant(rel, numeric()).value;
      const double reduced = schrodinger_constant(reduce_to_schrodinger(rel), numeric()).value;
      CHECK(full == doctest::Approx(2 * reduced).epsilon(1e-3));
    }
  }

  TEST_CASE("Dirac constants") {
    const ProblemSpec b1 = make_problem(3, WeightSpec::type_b(2.0), "dirac", 1.0);
    const ConstantReport r1 = dirac_constant(b1);
    CHECK(r1.value == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(r1.extremiser == Extremiser::none_detected);
    const ConstantReport n1 = dirac_constant(b1, numeric());
    CHECK(n1.value == doctest::Approx(2 * pi).epsilon(1e-3));
    CHECK(n1.location == Location::limit_zero);
    CHECK(n1.extremiser == Extremiser::none_detected);

    const ProblemSpec b0 = make_problem(3, WeightSpec::type_b(2.0), "dirac", 0.0);
    CHECK(dirac_constant(b0).value == doctest::Approx(4 * pi / 3).epsilon(1e-12));
    const ConstantReport n0 = dirac_constant(b0, numeric());
    CHECK(n0.value == doctest::Approx(4 * pi / 3).epsilon(1e-3));
    CHECK(n0.extremiser == Extremiser::exists_flat_interval);
    CHECK(n0.attaining_k == 0);

    for (double m : {0.0, 1.0}) {
      const ProblemSpec c = make_problem(3, WeightSpec::type_c(2.0), "dirac", m);
      CHECK(dirac_constant(c).value == doctest::Approx(pi).epsilon(1e-12));
      CHECK(dirac_constant(c, numeric()).value == doctest::Approx(pi).epsilon(1e-2));
    }

    const ProblemSpec a5 = make_problem(5, WeightSpec::type_a(2.0), "dirac", 1.0);
    const ConstantReport bo = dirac_constant(a5);
    CHECK(bo.method == Method::bound_only);
    REQUIRE(bo.upper_bound.has_value());
    REQUIRE(bo.lower_bound.has_value());
    CHECK(*bo.upper_bound <= pi + 1e-9);
    CHECK(*bo.lower_bound <= *bo.upper_bound * (1 + 1e-6));
  }

  TEST_CASE("radial Dirac constants") {
    const ProblemSpec b4 = make_problem(4, WeightSpec::type_b(2.0), "dirac", 1.0);
    CHECK(dirac_radial_constant(b4).value == doctest::Approx(pi).epsilon(1e-12));
    CHECK(dirac_radial_constant(b4, numeric()).value == doctest::Approx(pi).epsilon(1e-3));
    const ProblemSpec b3 = make_problem(3, WeightSpec::type_b(2.0), "dirac", 0.0);
    CHECK(dirac_radial_constant(b3).value == doctest::Approx(4 * pi / 3).epsilon(1e-12));
    for (double m : {0.0, 0.5}) {
      const ProblemSpec g = make_problem(3, WeightSpec::type_a(2.0), "dirac", m);
      CHECK(dirac_radial_constant(g).value <= dirac_constant(g).value * (1 + 1e-9));
    }
  }

  TEST_CASE("Dirac constant sits between half and all of the plain curves' sup") {
    for (double m : {0.0, 0.5}) {
      const ProblemSpec spec = make_problem(3, WeightSpec::type_a(3.0), "dirac", m);
      const double tilde = dirac_constant(spec, numeric()).value;
      const double plain = schrodinger_constant(spec, numeric()).value;
      CHECK(tilde >= 0.5 * plain * (1 - 1e-6));
      CHECK(tilde <= plain * (1 + 1e-6));
    }
  }

  TEST_CASE("equivalence chain") {
    for (int d : {2, 3})
      for (double m : {0.0, 1.0}) {
        const double s = d == 2 ? 1.5 : 2.0;
        const EquivalenceReport eq = equivalence_check(make_problem(d, WeightSpec::type_b(s), "dirac", m));
        CHECK(eq.pass);
        CHECK(eq.upper == doctest::Approx(eq.reduced_twice).epsilon(1e-9));
        if (m > 0) CHECK(eq.dirac == doctest::Approx(eq.upper).epsilon(1e-6));
      }
    const EquivalenceReport near = equivalence_check(make_problem(3, WeightSpec::type_b(3.0 - 1e-3), "dirac", 0.0));
    CHECK(near.dirac / near.lower == doctest::Approx(1.0).epsilon(1e-2));
  }
}
