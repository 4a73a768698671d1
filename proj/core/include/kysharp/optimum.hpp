#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kysharp/lambda.hpp"
#include "kysharp/problem.hpp"

namespace kysharp {

struct SearchPolicy {
  int k_max = 64;
  double r_min = 1e-3;
  double r_max = 1e3;
  int points_per_decade = 64;
  int golden_iterations = 40;
  double eps_flat = 1e-9;
  // Stop the k-scan once this many consecutive per-k maxima decrease.
  int decreasing_run = 8;
  // Relative disagreement allowed between two successive boundary
  // extrapolations before the sup counts as not localized.
  double extrapolation_tolerance = 1e-3;
  // Use the closed form when the problem matches a known family.
  bool prefer_closed_form = true;
};

/// Throws invalid_parameter unless r_min < r_max, k_max >= 1 and the grid
/// and refinement counts are positive.
void validate(const SearchPolicy& policy);

enum class Location { interior, flat_interval, limit_zero, limit_infinity, unknown };
enum class Extremiser { exists_flat_interval, none_detected, unknown };
enum class Method { closed_form, numeric_sup, bound_only };

const char* to_string(Location location) noexcept;
const char* to_string(Extremiser extremiser) noexcept;
const char* to_string(Method method) noexcept;

struct ConstantReport {
  double value = 0.0;  // sup lambda / (2 pi)^{d-1}
  std::optional<int> attaining_k;
  Location location = Location::unknown;
  std::optional<double> attaining_r;  // interior point, or left end of a flat interval
  std::optional<double> attaining_r_end;  // right end of a flat interval
  Extremiser extremiser = Extremiser::unknown;
  Method method = Method::numeric_sup;
  double error_estimate = 0.0;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  std::vector<double> per_k_maxima;  // numeric path only, normalized like value
  bool k_scan_stopped_early = false;
  std::vector<std::string> notes;
};

/// Curves 0..k_max at one radius, with optional error estimates.
using CurveBatch = std::function<std::vector<double>(double r, int k_max, std::vector<double>* errors)>;

struct SupResult {
  int k = 0;
  double r = 0.0;
  double r_end = 0.0;
  Location location = Location::unknown;
  double value = 0.0;
  double error = 0.0;
  std::vector<double> per_k_max;
  bool stopped_early = false;
  std::vector<double> grid;
  std::vector<std::vector<double>> values;  // values[k][i] on grid
  std::vector<std::string> notes;
};

/// Supremum over k <= policy.k_max and r > 0 of a family of curves.
///
/// Scans a log grid per k, stops the k-scan after policy.decreasing_run
/// consecutive decreasing per-k maxima, refines interior maxima by golden
/// section in log r, and treats maxima at a grid edge through a 10x
/// extension: a value still rising is extrapolated (Richardson in r at the
/// left edge, in 1/r at the right edge). `k_cap` limits the family size when
/// fewer curves exist. Throws sup_not_localized when the k-scan keeps rising
/// at k_max or two boundary extrapolations disagree.
SupResult sup_search(const CurveBatch& curves, const SearchPolicy& policy, int k_cap = -1);

/// exists_flat_interval when some curve stays within eps_flat of the sup on
/// a run of grid points spanning relative length >= 1e-2 without touching
/// only one grid edge; none_detected for an isolated maximum or a boundary
/// limit; unknown when near-maximal values reach one edge of the grid.
Extremiser extremiser_diagnosis(const SupResult& result, double sup_value, const SearchPolicy& policy);

/// C_d(w, psi, phi) = sup_k sup_r lambda_k(r) / (2 pi)^{d-1} for any dispersion.
ConstantReport schrodinger_constant(const ProblemSpec& spec, const SearchPolicy& policy = {});

/// Dirac constant sup_k sup_r tilde-lambda_k(r) / (2 pi)^{d-1}. For d >= 4
/// the result is bound_only: the upper bound C_d(w, psi, phi_m) and the
/// radial constant as lower bound.
ConstantReport dirac_constant(const ProblemSpec& spec, const SearchPolicy& policy = {});

/// Radial Dirac constant sup_r tilde-lambda_rad(r) / (2 pi)^{d-1}.
ConstantReport dirac_radial_constant(const ProblemSpec& spec, const SearchPolicy& policy = {});

struct EquivalenceReport {
  double lower = 0.0;   // C_d(w, phi_m^{1/2} psi, r^2) = C_d(w, psi, phi_m) / 2
  double dirac = 0.0;   // Dirac constant
  double upper = 0.0;   // C_d(w, psi, phi_m)
  double reduced_twice = 0.0;  // 2 C_d(reduced spec), equal to upper
  double tolerance = 0.0;
  bool pass = false;
  ConstantReport dirac_report;
};

/// Checks lower <= dirac <= upper = 2 C_d(reduced) within twice the summed
/// error estimates (plus a 1e-9 relative floor). d in {2, 3}.
EquivalenceReport equivalence_check(const ProblemSpec& spec, const SearchPolicy& policy = {});

namespace closed_form {

/// c_k = 2^{2-s} pi Gamma(s-1) Gamma((d-s)/2 + k) / (Gamma(s/2)^2 Gamma((d+s)/2 + k - 1)).
double c_k(int d, double s, int k);

/// Schrodinger constant for r^{-s} with psi = r^{(2-s)/2}: c_0 / 2.
double type_b(int d, double s);

/// (1 + r^2)^{-s/2} with psi = r^{1/2}, d >= 3: sqrt(pi) Gamma((s-1)/2) / (2 Gamma(s)).
double type_c(double s);

/// (1 + r^2)^{-1} with psi = (1 + r^2)^{1/4}: pi (d = 3), pi / 2 (d >= 5).
std::optional<double> type_a_s2(int d);

/// Dirac constant for r^{-s} with psi = phi_m^{-1/2} r^{(2-s)/2} from the
/// Gamma-function formula (times 1 - (s-1)/(d+s-2) when m = 0).
double type_b_dirac_gamma(int d, double s, double m);

/// The same constant as a combination of c_k: c_0 for m > 0, (c_0 + c_1) / 2 for m = 0.
double type_b_dirac_ck(int d, double s, double m);

}  // namespace closed_form

}  // namespace kysharp
