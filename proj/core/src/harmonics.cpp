#include "kysharp/harmonics.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <shared_mutex>
#include <string>

#include "kysharp/error.hpp"
#include "kysharp/specialfn.hpp"

namespace kysharp::harmonics {

namespace {

using specialfn::normalizing_constant;

RMatrix2 coupling_nonnegative(int k, int n) {
  const double kk = k, nn = n;
  const double den = 2.0 * kk + 1.0;
  const double nk_n = normalizing_constant(k, n);
  const double nk1_n = normalizing_constant(k + 1, n);
  const double nk1_n1 = normalizing_constant(k + 1, n + 1);
  RMatrix2 a;
  a(0, 0) = (kk - nn + 1.0) * nk_n / (den * nk1_n);
  a(1, 0) = -(2.0 * nn + 1.0) * nk_n / (den * nk1_n1);
  // Both right-column prefactors vanish at n = k, where N_k^{n+1} does not exist.
  const double pre12 = (kk - nn) * (kk - nn + 1.0);
  const double pre22 = kk - nn;
  if (pre12 == 0.0) {
    a(0, 1) = 0.0;
    a(1, 1) = 0.0;
  } else {
    const double nk_n1 = normalizing_constant(k, n + 1);
    a(0, 1) = pre12 * nk_n1 / ((2.0 * nn + 1.0) * den * nk1_n);
    a(1, 1) = -pre22 * nk_n1 / (den * nk1_n1);
  }
  return a;
}

CVector kernel_vector(const RMatrix2& a) {
  // Kernel of a rank-one 2 x 2 matrix from its larger row (x, y): (-y, x).
  const double n0 = a.row(0).norm();
  const double n1 = a.row(1).norm();
  const Eigen::Vector2d row = (n0 >= n1) ? Eigen::Vector2d(a.row(0)) : Eigen::Vector2d(a.row(1));
  Eigen::Vector2d kv(-row(1), row(0));
  kv /= kv.norm();
  const double tiny = 1e-13;
  if (std::abs(kv(0)) > tiny ? kv(0) < 0.0 : kv(1) < 0.0) kv = -kv;
  if (std::abs(kv(0)) <= tiny) kv(0) = 0.0;
  if (std::abs(kv(1)) <= tiny) kv(1) = 0.0;
  CVector out(2);
  out << kv(0), kv(1);
  return out;
}

std::shared_mutex& triple_mutex() {
  static std::shared_mutex m;
  return m;
}

std::map<std::pair<int, int>, std::unique_ptr<CouplingTriple>>& triple_cache() {
  static std::map<std::pair<int, int>, std::unique_ptr<CouplingTriple>> c;
  return c;
}

}  // namespace

bool coupling_in_range(int k, int n) { return k >= 0 && n >= -k - 1 && n <= k; }

RMatrix2 coupling_matrix(int k, int n) {
  require(coupling_in_range(k, n), ErrorKind::index_out_of_range,
          "coupling_matrix: need -k-1 <= n <= k, got k=" + std::to_string(k) +
              " n=" + std::to_string(n));
  if (n >= 0) return coupling_nonnegative(k, n);
  Eigen::Matrix2d s1;
  s1 << 0.0, 1.0, 1.0, 0.0;
  return -s1 * coupling_nonnegative(k, -(n + 1)) * s1;
}

RMatrix2 coupling_matrix_or_zero(int k, int n) {
  return coupling_in_range(k, n) ? coupling_matrix(k, n) : RMatrix2::Zero();
}

const CouplingTriple& coupling_triple(int k, int n) {
  const std::pair<int, int> key{k, n};
  {
    std::shared_lock lock(triple_mutex());
    auto it = triple_cache().find(key);
    if (it != triple_cache().end()) return *it->second;
  }
  auto triple = std::make_unique<CouplingTriple>();
  triple->k = k;
  triple->n = n;
  triple->A = coupling_matrix(k, n);
  triple->u = kernel_vector(triple->A);
  const CVector u_next = kernel_vector(coupling_matrix(k + 1, n));
  triple->v = triple->A.transpose().cast<Complex>() * u_next;
  std::unique_lock lock(triple_mutex());
  auto [it, inserted] = triple_cache().emplace(key, std::move(triple));
  return *it->second;
}

CMatrix y_block(int k, int n, double theta, double phi) {
  CMatrix y = CMatrix::Zero(2, 2);
  y(0, 0) = specialfn::spherical_harmonic(k, n, theta, phi);
  y(1, 1) = specialfn::spherical_harmonic(k, n + 1, theta, phi);
  return y;
}

CMatrix matrix_harmonic_2d(int k, double theta) {
  const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  CMatrix e = CMatrix::Zero(2, 2);
  e(0, 0) = c * std::polar(1.0, k * theta);
  e(1, 1) = c * std::polar(1.0, (k + 1) * theta);
  return e;
}

CMatrix matrix_harmonic_3d(int k, int n, double theta, double phi) {
  const CouplingTriple& t = coupling_triple(k, n);
  const CouplingTriple& t_next = coupling_triple(k + 1, n);
  const CVector yv = y_block(k, n, theta, phi) * t.v;
  const CVector yu = y_block(k + 1, n, theta, phi) * t_next.u;
  CMatrix e = CMatrix::Zero(4, 4);
  e.block(0, 0, 2, 1) = yv;
  e.block(0, 3, 2, 1) = yu;
  e.block(2, 1, 2, 1) = yv;
  e.block(2, 2, 2, 1) = yu;
  return e;
}

CMatrix sigma_dot(double theta, double phi) {
  const double st = std::sin(theta);
  return st * std::cos(phi) * dirac::pauli(1) + st * std::sin(phi) * dirac::pauli(2) +
         std::cos(theta) * dirac::pauli(3);
}

std::vector<ModeCoefficients> decompose_3d(const Field3d& f, int k_max,
                                           const std::vector<double>& r_grid) {
  require(k_max >= 0, ErrorKind::invalid_parameter, "decompose_3d: k_max must be >= 0");
  const quadrature::SphereRule sphere = quadrature::sphere_rule(2 * k_max + 2, 4 * k_max + 4);
  std::vector<ModeCoefficients> out;
  for (int k = 0; k <= k_max; ++k) {
    for (int n = -k - 1; n <= k; ++n) {
      ModeCoefficients mc;
      mc.k = k;
      mc.n = n;
      mc.values.assign(r_grid.size(), CVector::Zero(4));
      out.push_back(std::move(mc));
    }
  }
  // Harmonics are evaluated once per sphere node and reused for every radius.
  std::vector<std::vector<CMatrix>> adjoint(out.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    adjoint[m].reserve(sphere.size());
    for (std::size_t j = 0; j < sphere.size(); ++j) {
      adjoint[m].push_back(
          matrix_harmonic_3d(out[m].k, out[m].n, sphere.theta[j], sphere.phi[j]).adjoint());
    }
  }
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    std::vector<CVector> samples(sphere.size());
    for (std::size_t j = 0; j < sphere.size(); ++j) {
      const double st = std::sin(sphere.theta[j]);
      const std::array<double, 3> xi{r * st * std::cos(sphere.phi[j]), r * st * std::sin(sphere.phi[j]),
                                     r * std::cos(sphere.theta[j])};
      samples[j] = f(xi);
      require(samples[j].size() == 4, ErrorKind::invalid_parameter,
              "decompose_3d: field must return 4 components");
    }
    for (std::size_t m = 0; m < out.size(); ++m) {
      CVector acc = CVector::Zero(4);
      for (std::size_t j = 0; j < sphere.size(); ++j) acc += sphere.weight[j] * (adjoint[m][j] * samples[j]);
      out[m].values[i] = r * acc;
    }
  }
  return out;
}

CVector synthesize_3d(const std::vector<ModeCoefficients>& coefficients,
                      const std::vector<double>& r_grid, std::size_t i, double theta, double phi) {
  require(i < r_grid.size(), ErrorKind::invalid_parameter, "synthesize_3d: grid index out of range");
  CVector acc = CVector::Zero(4);
  for (const ModeCoefficients& mc : coefficients) {
    acc += matrix_harmonic_3d(mc.k, mc.n, theta, phi) * mc.values[i];
  }
  return acc / r_grid[i];
}

void write_coefficients_csv(std::ostream& out, const std::vector<ModeCoefficients>& coefficients,
                            const std::vector<double>& r_grid) {
  out << "k,n,r,re0,im0,re1,im1,re2,im2,re3,im3\n";
  char buf[512];
  for (const ModeCoefficients& mc : coefficients) {
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      const CVector& v = mc.values[i];
      std::snprintf(buf, sizeof buf,
                    "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", mc.k, mc.n,
                    r_grid[i], v(0).real(), v(0).imag(), v(1).real(), v(1).imag(), v(2).real(),
                    v(2).imag(), v(3).real(), v(3).imag());
      out << buf;
    }
  }
}

}  // namespace kysharp::harmonics
