#include "kysharp/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kysharp/error.hpp"

namespace kysharp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::divergent_transform: return "divergent-transform";
    case ErrorKind::quadrature_failure: return "quadrature-failure";
    case ErrorKind::unsupported_dimension: return "unsupported-dimension";
    case ErrorKind::degenerate_symbol: return "degenerate-symbol";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::sup_not_localized: return "sup-not-localized";
    case ErrorKind::truncation_not_converged: return "truncation-not-converged";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

namespace specialfn {

double gegenbauer(double p, int n, double x) {
  require(p > 0.0, ErrorKind::invalid_parameter,
          "gegenbauer: parameter p must be positive, got " + std::to_string(p));
  require(n >= -1, ErrorKind::invalid_parameter, "gegenbauer: degree must be >= -1");
  if (n == -1) return 0.0;
  double prev = 0.0;  // C_{-1}
  double cur = 1.0;   // C_0
  for (int j = 0; j < n; ++j) {
    const double next = (2.0 * (j + p) * x * cur - (j + 2.0 * p - 1.0) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_at_one(double p, int n) {
  require(p > 0.0, ErrorKind::invalid_parameter, "gegenbauer_at_one: p must be positive");
  if (n <= 0) return n == 0 ? 1.0 : 0.0;
  return std::exp(std::lgamma(n + 2.0 * p) - std::lgamma(n + 1.0) - std::lgamma(2.0 * p));
}

namespace {

void check_dimension(int d) {
  require(d >= 2, ErrorKind::invalid_parameter,
          "legendre_d: dimension must be >= 2, got " + std::to_string(d));
}

}  // namespace

// Normalized recurrence: with lam = (d-2)/2,
//   (k + 2 lam) p_{k+1} = 2 (k + lam) t p_k - k p_{k-1},  p_0 = 1, p_1 = t.
// For d = 2 (lam = 0) this is the Chebyshev recurrence.
void legendre_d_all(int d, int k_max, double t, double* out) {
  check_dimension(d);
  if (k_max < 0) return;
  const double lam = 0.5 * (d - 2);
  out[0] = 1.0;
  if (k_max == 0) return;
  out[1] = t;
  for (int k = 1; k < k_max; ++k) {
    out[k + 1] = (2.0 * (k + lam) * t * out[k] - k * out[k - 1]) / (k + 2.0 * lam);
  }
}

PolynomialEval legendre_d_with_derivative(int d, int k, double t) {
  check_dimension(d);
  require(k >= 0, ErrorKind::invalid_parameter, "legendre_d: degree must be >= 0");
  const double lam = 0.5 * (d - 2);
  double p_prev = 1.0, dp_prev = 0.0;
  if (k == 0) return {1.0, 0.0};
  double p = t, dp = 1.0;
  for (int j = 1; j < k; ++j) {
    const double denom = j + 2.0 * lam;
    const double p_next = (2.0 * (j + lam) * t * p - j * p_prev) / denom;
    const double dp_next = (2.0 * (j + lam) * (p + t * dp) - j * dp_prev) / denom;
    p_prev = p;
    dp_prev = dp;
    p = p_next;
    dp = dp_next;
  }
  return {p, dp};
}

double legendre_d(int d, int k, double t) {
  return legendre_d_with_derivative(d, k, t).value;
}

double double_factorial_odd(int n) {
  require(n >= 0, ErrorKind::invalid_parameter, "double_factorial_odd: n must be >= 0");
  double result = 1.0;
  for (int j = 2 * n - 1; j > 1; j -= 2) result *= j;
  return result;
}

double sphere_measure(int j) {
  require(j >= 0, ErrorKind::invalid_parameter, "sphere_measure: j must be >= 0");
  const double h = 0.5 * (j + 1);
  return 2.0 * std::exp(h * std::log(std::numbers::pi) - std::lgamma(h));
}

double normalizing_constant(int k, int n) {
  require(n >= 0 && n <= k, ErrorKind::invalid_parameter,
          "normalizing_constant: need 0 <= n <= k, got k=" + std::to_string(k) +
              " n=" + std::to_string(n));
  // log (2n-1)!! = n log 2 + lgamma(n + 1/2) - lgamma(1/2)
  const double log_dfact =
      n * std::numbers::ln2 + std::lgamma(n + 0.5) - 0.5 * std::log(std::numbers::pi);
  const double log_ratio = std::lgamma(k - n + 1.0) - std::lgamma(k + n + 1.0);
  return std::exp(log_dfact + 0.5 * (std::log(k + 0.5) + log_ratio));
}

std::complex<double> spherical_harmonic(int k, int n, double theta, double phi) {
  const int an = n < 0 ? -n : n;
  if (k < 0 || an > k) return {0.0, 0.0};
  const double sign = ((n + an) / 2) % 2 == 0 ? 1.0 : -1.0;
  const double radial = sign * normalizing_constant(k, an) * std::pow(std::sin(theta), an) *
                        gegenbauer(an + 0.5, k - an, std::cos(theta));
  return radial / std::sqrt(2.0 * std::numbers::pi) * std::polar(1.0, n * phi);
}

}  // namespace specialfn
}  // namespace kysharp
