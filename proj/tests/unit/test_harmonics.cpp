#include <doctest.h>

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kysharp/error.hpp"
#include "kysharp/harmonics.hpp"
#include "kysharp/specialfn.hpp"

using namespace kysharp;
using namespace kysharp::harmonics;
using std::numbers::pi;

TEST_SUITE("harmonics") {
  TEST_CASE("A_0^0 entries") {
    const RMatrix2 a = coupling_matrix(0, 0);
    const double c = 1.0 / std::sqrt(3.0);
    CHECK(a(0, 0) == doctest::Approx(c).epsilon(1e-15));
    CHECK(a(0, 1) == 0.0);
    CHECK(a(1, 0) == doctest::Approx(-std::sqrt(2.0) * c).epsilon(1e-15));
    CHECK(a(1, 1) == 0.0);
    const CouplingTriple& t = coupling_triple(0, 0);
    CHECK(std::abs(t.u(0)) < 1e-15);
    CHECK(t.u(1).real() == doctest::Approx(1.0));
    CHECK(t.u(1).imag() == 0.0);
  }

  TEST_CASE("index range") {
    CHECK(coupling_in_range(2, -3));
    CHECK(!coupling_in_range(2, -4));
    CHECK(!coupling_in_range(2, 3));
    CHECK_THROWS_AS(coupling_matrix(2, 3), Error);
    CHECK_THROWS_AS(coupling_matrix(-1, 0), Error);
    CHECK(coupling_matrix_or_zero(2, 3).isZero(0.0));
  }

  TEST_CASE("negative n mirrors through sigma_1") {
    RMatrix2 s1;
    s1 << 0, 1, 1, 0;
    for (int k = 0; k <= 6; ++k)
      for (int n = -k - 1; n <= -1; ++n)
        CHECK((coupling_matrix(k, n) + s1 * coupling_matrix(k, -(n + 1)) * s1).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("basis pair relations") {
    for (int k = 0; k <= 12; ++k)
      for (int n = -k - 1; n <= k; ++n) {
        const CouplingTriple& t = coupling_triple(k, n);
        CHECK(std::abs(t.u.norm() - 1.0) < 1e-12);
        CHECK(std::abs(t.v.norm() - 1.0) < 1e-12);
        CHECK(std::abs(t.u.dot(t.v)) < 1e-12);
        CHECK((t.A.cast<Complex>() * t.u).norm() < 1e-12);
        CHECK(std::abs(t.A.determinant()) < 1e-12);
        // first nonvanishing component of u is real positive
        const Complex lead = std::abs(t.u(0)) > 1e-14 ? t.u(0) : t.u(1);
        CHECK(lead.real() > 0.0);
        CHECK(lead.imag() == 0.0);
        if (coupling_in_range(k + 1, n)) {
          const CouplingTriple& up = coupling_triple(k + 1, n);
          CHECK((t.A.cast<Complex>() * t.v - up.u).norm() < 1e-12);
        }
      }
  }

  TEST_CASE("two dimensional harmonics") {
    const CMatrix e0 = matrix_harmonic_2d(3, 0.0);
    CHECK(std::abs(e0(0, 0) - 1.0 / std::sqrt(2 * pi)) < 1e-15);
    CHECK(std::abs(e0(1, 1) - 1.0 / std::sqrt(2 * pi)) < 1e-15);
    CHECK(std::abs(e0(0, 1)) == 0.0);
    const CMatrix em = matrix_harmonic_2d(-1, pi);
    CHECK(std::abs(em(0, 0) + 1.0 / std::sqrt(2 * pi)) < 1e-15);
    CHECK(std::abs(em(1, 1) - 1.0 / std::sqrt(2 * pi)) < 1e-15);
  }

  TEST_CASE("sigma dot omega is a unit involution") {
    const CMatrix s = sigma_dot(0.8, 2.4);
    CMatrix id(2, 2);
    id.setIdentity();
    CHECK((s * s - id).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("single-mode decomposition and round trip") {
    const std::vector<double> r_grid{0.5, 1.0, 2.0};
    CVector c(4);
    c << Complex(1, 0), Complex(0, -0.5), Complex(0.25, 0), Complex(0, 2);
    const Field3d f = [&](const std::array<double, 3>& xi) {
      const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
      const double theta = std::acos(std::clamp(xi[2] / r, -1.0, 1.0));
      const double phi = std::atan2(xi[1], xi[0]);
      return CVector(std::exp(-r) / r * matrix_harmonic_3d(2, -1, theta, phi) * c);
    };
    const auto coeffs = decompose_3d(f, 4, r_grid);
    for (const auto& mc : coeffs)
      for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (mc.k == 2 && mc.n == -1)
          CHECK((mc.values[i] - std::exp(-r_grid[i]) * c).norm() < 1e-12);
        else
          CHECK(mc.values[i].norm() < 1e-10);
      }
    const double theta = 1.1, phi = -0.7;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      const std::array<double, 3> xi{r_grid[i] * std::sin(theta) * std::cos(phi),
                                     r_grid[i] * std::sin(theta) * std::sin(phi), r_grid[i] * std::cos(theta)};
      CHECK((synthesize_3d(coeffs, r_grid, i, theta, phi) - f(xi)).norm() < 1e-10);
    }
    std::ostringstream out;
    write_coefficients_csv(out, coeffs, r_grid);
    CHECK(out.str().rfind("k,n,r,", 0) == 0);
  }
}
