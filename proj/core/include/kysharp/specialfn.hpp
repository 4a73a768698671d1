#pragma once

#include <complex>

namespace kysharp::specialfn {

/// Index pair (k, n) of a scalar spherical harmonic Y_k^n; |n| <= k.
struct HarmonicIndex {
  int k = 0;
  int n = 0;
};

/// Value of a polynomial together with its derivative.
struct PolynomialEval {
  double value = 0.0;
  double derivative = 0.0;
};

/// Gegenbauer polynomial C_n^p(x) from the three-term recurrence
/// (n+1) C_{n+1} = 2(n+p) x C_n - (n+2p-1) C_{n-1}, C_{-1} = 0, C_0 = 1.
/// Throws invalid_parameter for p <= 0.
double gegenbauer(double p, int n, double x);

/// C_n^p(1) = Gamma(n+2p) / (n! Gamma(2p)), evaluated through log-Gamma.
double gegenbauer_at_one(double p, int n);

/// Legendre polynomial of degree k in d dimensions, normalized p_{d,k}(1) = 1.
///
/// For d >= 3 this is C_k^{(d-2)/2}(t) / C_k^{(d-2)/2}(1); for d = 2 it is the
/// Chebyshev polynomial T_k(t), produced by the recurrence
/// p_{k+1} = 2 t p_k - p_{k-1}.
double legendre_d(int d, int k, double t);

/// Value and derivative of p_{d,k}(t).
PolynomialEval legendre_d_with_derivative(int d, int k, double t);

/// Fills out[0..k_max] with p_{d,0}(t) .. p_{d,k_max}(t) using the normalized
/// three-term recurrence. `out` must have room for k_max + 1 values.
void legendre_d_all(int d, int k_max, double t, double* out);

/// (2n-1)!! with the convention (-1)!! = 1.
double double_factorial_odd(int n);

/// Total surface measure of the unit j-sphere S^j in R^{j+1}:
/// 2 pi^{(j+1)/2} / Gamma((j+1)/2).
double sphere_measure(int j);

/// N_k^n = (2n-1)!! ((k + 1/2) (k-n)! / (k+n)!)^{1/2} for 0 <= n <= k.
double normalizing_constant(int k, int n);

/// Scalar spherical harmonic on S^2,
/// Y_k^n(theta, phi) = (2 pi)^{-1/2} (-1)^{(n+|n|)/2} N_k^{|n|}
///                     sin(theta)^{|n|} C_{k-|n|}^{|n|+1/2}(cos theta) e^{i n phi}.
/// Returns 0 when |n| > k or k < 0 so that block assemblies can index
/// freely past the edge of the admissible range.
std::complex<double> spherical_harmonic(int k, int n, double theta, double phi);

}  // namespace kysharp::specialfn
