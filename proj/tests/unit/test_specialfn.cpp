#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kysharp/error.hpp"
#include "kysharp/quadrature.hpp"
#include "kysharp/specialfn.hpp"

using namespace kysharp;
using namespace kysharp::specialfn;
using namespace kysharp::quadrature;
using std::numbers::pi;

TEST_SUITE("specialfn") {
  TEST_CASE("normalizing constants") {
    CHECK(normalizing_constant(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(normalizing_constant(1, 0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(normalizing_constant(1, 1) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(normalizing_constant(1, 2), Error);
    CHECK(double_factorial_odd(0) == 1.0);
    CHECK(double_factorial_odd(3) == 15.0);
  }

  TEST_CASE("spherical harmonic values") {
    const auto y00 = spherical_harmonic(0, 0, 0.7, 2.1);
    CHECK(y00.real() == doctest::Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-15));
    CHECK(std::abs(y00.imag()) < 1e-16);
    CHECK(spherical_harmonic(1, 0, 0.0, 0.0).real() ==
          doctest::Approx(std::sqrt(3.0 / (4.0 * pi))).epsilon(1e-15));
    CHECK(spherical_harmonic(2, 3, 0.4, 0.2) == std::complex<double>(0.0, 0.0));
  }

  TEST_CASE("spherical harmonics are orthonormal") {
    const SphereRule rule = sphere_rule(16, 32);
    double worst = 0.0;
    for (int k = 0; k <= 4; ++k)
      for (int n = -k; n <= k; ++n)
        for (int k2 = 0; k2 <= 4; ++k2)
          for (int n2 = -k2; n2 <= k2; ++n2) {
            std::complex<double> s = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i)
              s += rule.weight[i] * spherical_harmonic(k, n, rule.theta[i], rule.phi[i]) *
                   std::conj(spherical_harmonic(k2, n2, rule.theta[i], rule.phi[i]));
            const double expect = (k == k2 && n == n2) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(s - expect));
          }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("low degree closed forms of p_{d,k}") {
    for (double t : {-0.9, -0.3, 0.0, 0.45, 1.0}) {
      CHECK(legendre_d(3, 2, t) == doctest::Approx((3 * t * t - 1) / 2).epsilon(1e-14));
      CHECK(legendre_d(2, 3, t) == doctest::Approx(4 * t * t * t - 3 * t).epsilon(1e-14));
      // d = 4: Chebyshev U_k / (k+1)
      CHECK(legendre_d(4, 2, t) == doctest::Approx((4 * t * t - 1) / 3).epsilon(1e-14));
      // d = 5: C^{3/2}_2 / C^{3/2}_2(1) = (5 t^2 - 1) / 4
      CHECK(legendre_d(5, 2, t) == doctest::Approx((5 * t * t - 1) / 4).epsilon(1e-14));
    }
  }

  TEST_CASE("p_{d,k}(1) = 1 and the batch recurrence matches single evaluations") {
    for (int d = 2; d <= 6; ++d) {
      double all[41];
      legendre_d_all(d, 40, 0.37, all);
      for (int k = 0; k <= 40; ++k) {
        CHECK(legendre_d(d, k, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(all[k] == doctest::Approx(legendre_d(d, k, 0.37)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("derivative matches a central difference") {
    const double h = 1e-6;
    for (int d = 2; d <= 6; ++d)
      for (int k = 0; k <= 8; ++k) {
        const double fd = (legendre_d(d, k, 0.3 + h) - legendre_d(d, k, 0.3 - h)) / (2 * h);
        CHECK(legendre_d_with_derivative(d, k, 0.3).derivative == doctest::Approx(fd).epsilon(1e-7));
      }
  }

  TEST_CASE("Gegenbauer recurrence and value at one") {
    for (double p : {0.5, 1.0, 1.5, 2.75})
      for (int n = 1; n <= 30; ++n) {
        const double x = -0.8 + 0.05 * n;
        const double r = (n + 1) * gegenbauer(p, n + 1, x) - 2 * (n + p) * x * gegenbauer(p, n, x) +
                         (n + 2 * p - 1) * gegenbauer(p, n - 1, x);
        CHECK(std::abs(r) <= 1e-12 * (1.0 + std::abs((n + 1) * gegenbauer(p, n + 1, x))));
        CHECK(gegenbauer(p, n, 1.0) == doctest::Approx(gegenbauer_at_one(p, n)).epsilon(1e-12));
      }
    CHECK_THROWS_AS(gegenbauer(0.0, 2, 0.1), Error);
    // large k stays finite through log-Gamma
    CHECK(std::isfinite(gegenbauer_at_one(2.0, 200)));
  }

  TEST_CASE("sphere measures") {
    CHECK(sphere_measure(0) == doctest::Approx(2.0));
    CHECK(sphere_measure(1) == doctest::Approx(2 * pi));
    CHECK(sphere_measure(2) == doctest::Approx(4 * pi));
    CHECK(sphere_measure(3) == doctest::Approx(2 * pi * pi));
  }
}
