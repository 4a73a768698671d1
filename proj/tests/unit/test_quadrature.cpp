#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kysharp/quadrature.hpp"

using namespace kysharp;
using namespace kysharp::quadrature;

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const Rule& rule = gauss_legendre(10);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 18);
    CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
  }

  TEST_CASE("Gauss-Jacobi weights carry the endpoint singularity") {
    // \int (1-x)^{-1/2} (1+x)^{1/2} dx = pi
    const Rule& rule = gauss_jacobi(20, -0.5, 0.5);
    double s = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      s += rule.weights[i];
      m1 += rule.weights[i] * rule.nodes[i];
    }
    CHECK(s == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    // first moment: \int x (1-x)^{-1/2} (1+x)^{1/2} dx = pi / 2
    CHECK(m1 == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  }

  TEST_CASE("cached rules are stable") {
    const Rule& a = gauss_jacobi(64, 0.25, -0.5);
    const Rule& b = gauss_jacobi(64, 0.25, -0.5);
    CHECK(&a == &b);
  }

  TEST_CASE("sphere rule has total area 4 pi") {
    const SphereRule rule = sphere_rule(12, 24);
    double s = 0.0;
    for (double w : rule.weight) s += w;
    CHECK(s == doctest::Approx(4 * std::numbers::pi).epsilon(1e-14));
  }

  TEST_CASE("integrate_legendre") {
    CHECK(integrate_legendre([](double x) { return std::exp(x); }, 0.0, 1.0, 16) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  }
}
