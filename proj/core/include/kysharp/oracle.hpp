#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kysharp/diracalg.hpp"
#include "kysharp/problem.hpp"

namespace kysharp::oracle {

using dirac::CVector;

/// One term of the matrix-harmonic expansion
///   f(xi) = r^{-(d-1)/2} E(omega) g(r),
/// with E = E_k (d = 2, spinors in C^2) or E_k^n (d = 3, spinors in C^4).
struct ModeInput {
  int d = 3;
  int k = 0;
  int n = 0;  // d = 3 only
  std::function<CVector(double)> profile;  // g(r), zero outside [r0, r1]
  double r0 = 0.5;
  double r1 = 1.5;
  double m = 0.0;
};

/// Throws invalid_parameter for d outside {2, 3}, a negative k in d = 3,
/// n outside [-k-1, k], 0 < r0 < r1 failing, a negative mass or a missing
/// profile.
void validate(const ModeInput& input);

/// g(r) = exp(-(r - center)^2 / (2 width^2)) spinor, truncated to
/// center +- 6 width (and to r >= 1e-3).
ModeInput gaussian_bump_mode(int d, int k, int n, double m, double center, double width,
                             const CVector& spinor);

/// ||f||^2 = \int |g(r)|^2 dr.
double mode_norm_squared(const ModeInput& input, int nodes = 200);

/// |\int_{S^2} F(theta . omega) Y_k^n(theta) d sigma - mu_k[F] Y_k^n(omega)| with
/// the sphere integral taken by a product rule in the standard coordinates
/// and mu_k by the adaptive one-dimensional rule.
double funk_hecke_residual(const std::function<double(double)>& F, int k, int n, double theta,
                           double phi, int sphere_nodes = 48);

/// 2 pi \int sum_pm <Lambda g_pm(r), g_pm(r)> dr with g_pm the
/// +-phi_m eigencomponents of the symbol acting on the coefficients and
/// Lambda = diag(lambda_k, lambda_{k+1}). `spec` supplies w, psi and phi_m;
/// its mass must equal input.m.
double norm_spectral(const ModeInput& input, const ProblemSpec& spec, int nodes = 200);

struct TruncationBox {
  double X = 10.0;   // |x| <= X
  double T = 20.0;   // |t| <= T, doubled while the tail budget is missed
  double T_limit = 320.0;
  int n_r = 200;     // Gauss-Legendre nodes over the profile support
  int n_x = 96;      // Gauss-Legendre nodes in |x|
  double dt = 0.1;   // upper bound on the time step
  double tail_budget = 0.02;

  void validate() const;
};

struct TracePoint {
  double T = 0.0;
  double value = 0.0;
};

struct DirectResult {
  double value = 0.0;
  double tail_fraction = 0.0;  // (V(T) - V(T/2)) / V(T)
  double x_tail_fraction = 0.0;  // share of |x| in [X/2, X]
  std::vector<TracePoint> trace;  // V(T) for T = T_final / 2^j
};

/// \int_{|t| <= T} \int_{|x| <= X} |(S f)(x, t)|^2 dx dt with
///   (S f)(x, t) = w(|x|)^{1/2} \int e^{i x . xi} psi(|xi|) e^{-i t A_xi} f(xi) d xi.
/// The propagator is applied pointwise on a sphere grid at each radial node,
/// the result is projected on scalar harmonics per spinor component, and the
/// plane wave is expanded by Rayleigh (d = 3) or Jacobi-Anger (d = 2). Time
/// uses the trapezoid rule. T doubles until the tail fraction drops below
/// the budget; past T_limit throws truncation_not_converged.
DirectResult norm_direct(const ModeInput& input, const ProblemSpec& spec, const TruncationBox& box);

struct InequalitySample {
  double ratio = 0.0;  // sum norm_spectral / sum ||f||^2
  double bound = 0.0;  // 2 pi lambda-tilde-star
  bool within = false;  // ratio <= bound (1 + rtol)
};

/// Ratio of norm_spectral to ||f||^2 for a finite sum of distinct modes,
/// compared against 2 pi (2 pi)^{d-1} C-tilde.
InequalitySample inequality_sample(const std::vector<ModeInput>& modes, const ProblemSpec& spec,
                                   double dirac_constant, double rtol = 1e-9);

/// Oracle scenario: a single Gaussian-bump mode with its truncation box.
///
///   name = d3_k0_m1
///   d = 3            k = 0          n = 0          m = 1
///   family = gaussian | A (with s)
///   profile = gaussian_bump         center = 2     width = 0.3
///   spinor = 1 0.5 0.25 -0.5        (real entries, 2 for d = 2, 4 for d = 3)
///   X, T, T_limit, n_r, n_x, dt, tail_budget, budget   (optional)
struct Scenario {
  std::string name;
  ModeInput input;
  ProblemSpec spec;
  TruncationBox box;
  double budget = 0.05;  // allowed relative difference between the two norms
};

Scenario read_scenario(std::istream& in, const std::string& source = "<scenario>");
Scenario load_scenario(const std::string& path);

struct ScenarioResult {
  std::string name;
  double spectral = 0.0;
  double direct = 0.0;
  double rel_diff = 0.0;
  double budget = 0.0;
  DirectResult detail;
};

ScenarioResult run_scenario(const Scenario& scenario);

/// CSV row: scenario,spectral,direct,rel_diff,budget (17 significant digits).
void write_result_csv_header(std::ostream& out);
void write_result_csv_row(std::ostream& out, const ScenarioResult& result);

}  // namespace kysharp::oracle
