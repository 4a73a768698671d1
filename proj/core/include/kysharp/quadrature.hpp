#pragma once

#include <vector>

namespace kysharp::quadrature {

/// Nodes and weights of an interpolatory rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1].
///
/// Nodes come from the Golub-Welsch eigenproblem and are polished by Newton
/// steps on the Jacobi recurrence; weights use the closed form in terms of
/// P_n'. Rules are cached per (n, alpha, beta) and the returned reference
/// stays valid for the lifetime of the process. Thread safe.
const Rule& gauss_jacobi(int n, double alpha, double beta);

/// n-point Gauss-Legendre rule (Gauss-Jacobi with alpha = beta = 0).
const Rule& gauss_legendre(int n);

/// Product rule on the unit sphere S^2: Gauss-Legendre in cos(theta) and the
/// trapezoid rule in phi. Weights include the surface element.
struct SphereRule {
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> weight;

  std::size_t size() const { return theta.size(); }
};

/// Exact for spherical polynomials of degree < min(2 n_theta, n_phi).
SphereRule sphere_rule(int n_theta, int n_phi);

/// Integral of f over [a, b] with the n-point Gauss-Legendre rule.
template <class F>
double integrate_legendre(F&& f, double a, double b, int n) {
  const Rule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace kysharp::quadrature
