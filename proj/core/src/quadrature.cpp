#include "kysharp/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "kysharp/error.hpp"

namespace kysharp::quadrature {

namespace {

struct JacobiEval {
  double p;   // P_n^{(a,b)}(x)
  double dp;  // derivative
};

// Standard (non-monic) Jacobi polynomial and its derivative at x.
JacobiEval jacobi_eval(int n, double a, double b, double x) {
  double p_prev = 1.0;
  double p = 0.5 * ((a + b + 2.0) * x + (a - b));
  if (n == 0) return {1.0, 0.0};
  for (int j = 2; j <= n; ++j) {
    const double c = 2.0 * j + a + b;
    const double a1 = 2.0 * j * (j + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
    const double a3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * c;
    const double p_next = (a2 * p - a3 * p_prev) / a1;
    p_prev = p;
    p = p_next;
  }
  const double c = 2.0 * n + a + b;
  const double dp = (n * ((a - b) - c * x) * p + 2.0 * (n + a) * (n + b) * p_prev) / (c * (1.0 - x * x));
  return {p, dp};
}

Rule build_gauss_jacobi(int n, double a, double b) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) {
    const double c = 2.0 * i + a + b;
    diag(i) = (i == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (c * (c + 2.0));
  }
  for (int i = 1; i < n; ++i) {
    const double c = 2.0 * i + a + b;
    double b2;
    if (i == 1) {
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      b2 = 4.0 * i * (i + a) * (i + b) * (i + a + b) / (c * c * (c + 1.0) * (c - 1.0));
    }
    sub(i - 1) = std::sqrt(b2);
  }
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, ErrorKind::quadrature_failure,
            "gauss_jacobi: tridiagonal eigensolver did not converge");
    for (int i = 0; i < n; ++i) rule.nodes[i] = solver.eigenvalues()(i);
  }
  const double log_const = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                           std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0) +
                           (a + b + 1.0) * std::numbers::ln2;
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      const JacobiEval e = jacobi_eval(n, a, b, x);
      const double step = e.p / e.dp;
      if (!std::isfinite(step)) break;
      const double x_new = x - step;
      if (x_new <= -1.0 || x_new >= 1.0) break;
      x = x_new;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = x;
    const JacobiEval e = jacobi_eval(n, a, b, x);
    rule.weights[i] = std::exp(log_const) / ((1.0 - x * x) * e.dp * e.dp);
  }
  return rule;
}

using Key = std::tuple<int, double, double>;

std::shared_mutex& cache_mutex() {
  static std::shared_mutex m;
  return m;
}

std::map<Key, std::unique_ptr<Rule>>& cache() {
  static std::map<Key, std::unique_ptr<Rule>> c;
  return c;
}

}  // namespace

const Rule& gauss_jacobi(int n, double alpha, double beta) {
  require(n >= 1, ErrorKind::invalid_parameter, "gauss_jacobi: need n >= 1");
  require(alpha > -1.0 && beta > -1.0, ErrorKind::invalid_parameter,
          "gauss_jacobi: exponents must exceed -1, got alpha=" + std::to_string(alpha) +
              " beta=" + std::to_string(beta));
  const Key key{n, alpha, beta};
  {
    std::shared_lock lock(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) return *it->second;
  }
  auto rule = std::make_unique<Rule>(build_gauss_jacobi(n, alpha, beta));
  std::unique_lock lock(cache_mutex());
  auto [it, inserted] = cache().emplace(key, std::move(rule));
  return *it->second;
}

const Rule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

SphereRule sphere_rule(int n_theta, int n_phi) {
  require(n_theta >= 1 && n_phi >= 1, ErrorKind::invalid_parameter,
          "sphere_rule: need positive node counts");
  const Rule& gl = gauss_legendre(n_theta);
  SphereRule out;
  out.theta.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  out.phi.reserve(out.theta.capacity());
  out.weight.reserve(out.theta.capacity());
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(gl.nodes[i]);
    for (int j = 0; j < n_phi; ++j) {
      out.theta.push_back(theta);
      out.phi.push_back(j * dphi);
      out.weight.push_back(gl.weights[i] * dphi);
    }
  }
  return out;
}

}  // namespace kysharp::quadrature
