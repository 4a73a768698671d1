#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kysharp/problem.hpp"

namespace kysharp {

/// Rule used by mu_k for a user supplied integrand.
struct QuadratureScheme {
  enum class Rule { gauss_legendre, gauss_jacobi, gauss_chebyshev, adaptive };
  Rule rule = Rule::adaptive;
  int node_count = 128;
  // Endpoint exponents of the Gauss-Jacobi weight (1-t)^alpha (1+t)^beta;
  // only read for Rule::gauss_jacobi.
  double alpha = 0.0;
  double beta = 0.0;
  // Absolute-plus-relative target for Rule::adaptive.
  double tolerance = 1e-12;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// |S^{d-2}| \int_{-1}^{1} F(t) p_{d,k}(t) (1-t^2)^{(d-3)/2} dt.
///
/// The error is |Q_n - Q_{2n}|. Rule::adaptive starts from the Gauss-Jacobi
/// rule matching (1-t^2)^{(d-3)/2} and doubles n until the difference meets
/// the tolerance, throwing quadrature_failure past 4096 nodes.
Estimate mu_k(const std::function<double(double)>& F, int d, int k,
              const QuadratureScheme& scheme = {});

enum class CurveKind { schrodinger, dirac, dirac_radial };

const char* to_string(CurveKind kind) noexcept;

/// Evaluates the curves lambda_k(r) of a problem for all k up to a bound in
/// one pass.
///
/// The angular integral is split at t = 0. On [0, 1] the substitution
/// t = 1 - v^2 turns the endpoint behaviour of F_w(r^2 (1-t)) into powers of
/// v, which a geometrically graded panel ladder towards v = 0 resolves; the
/// innermost panel carries the leading power as a Gauss-Jacobi weight. On
/// [-1, 0] a single Gauss-Jacobi rule absorbs (1+t)^{(d-3)/2}. For the power
/// weight r^{-s} the whole integrand is (1-t)^{(s-3)/2} (1+t)^{(d-3)/2}
/// times a polynomial and one Gauss-Jacobi rule is exact.
class LambdaEvaluator {
 public:
  struct Options {
    int panel_order = 24;
    bool estimate_error = false;
  };

  explicit LambdaEvaluator(ProblemSpec spec);
  LambdaEvaluator(ProblemSpec spec, Options options);

  const ProblemSpec& spec() const { return spec_; }

  /// r^{d-1} psi(r)^2 / |phi'(r)|.
  double prefactor(double r) const;

  /// lambda_0(r) .. lambda_{k_max}(r). When `errors` is non-null it receives
  /// k_max + 1 error estimates (|Q - Q_refined|).
  std::vector<double> lambda(double r, int k_max, std::vector<double>* errors = nullptr) const;

  /// Single curve value; for d = 2 negative k reads lambda_{|k|}.
  double lambda_k(int k, double r) const;
  Estimate lambda_k_estimate(int k, double r) const;

  /// (lambda_k + lambda_{k+1}) / 2 + m / (2 phi_m) |lambda_k - lambda_{k+1}|
  /// for k = 0 .. k_max; requires the relativistic dispersion.
  std::vector<double> dirac_lambda(double r, int k_max, std::vector<double>* errors = nullptr) const;

  /// (lambda_0 + lambda_1 + m^2 / (r^2 + m^2) (lambda_0 - lambda_1)) / 2.
  Estimate dirac_lambda_rad(double r) const;

 private:
  void accumulate(double r, int k_max, int order, std::vector<double>& mu) const;

  ProblemSpec spec_;
  Options options_;
};

/// Pointwise forms of the Dirac combinations, shared with the algebra checks.
double dirac_combination(double lk, double lk1, double m, double r);
double dirac_radial_combination(double l0, double l1, double m, double r);

double lambda_k(const ProblemSpec& spec, int k, double r);
double dirac_lambda_k(const ProblemSpec& spec, int k, double r);
double dirac_lambda_rad(const ProblemSpec& spec, double r);

struct LambdaProfile {
  int k = 0;
  CurveKind kind = CurveKind::schrodinger;
  std::vector<double> r_grid;
  std::vector<double> values;
  std::vector<double> errors;
};

/// Samples one curve over an increasing grid, in parallel across grid points.
LambdaProfile sample_profile(const ProblemSpec& spec, int k, CurveKind kind,
                             const std::vector<double>& r_grid);

/// Samples curves 0..k_max of one kind; one quadrature pass per grid point.
std::vector<LambdaProfile> sample_profiles(const ProblemSpec& spec, int k_max, CurveKind kind,
                                           const std::vector<double>& r_grid);

/// CSV with header k,r,value,err_estimate,kind and 17 significant digits.
void write_profiles_csv(std::ostream& out, const std::vector<LambdaProfile>& profiles);

/// n points geometrically spaced over [r_min, r_max], inclusive.
std::vector<double> log_grid(double r_min, double r_max, int n);

}  // namespace kysharp
