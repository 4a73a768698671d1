#pragma once

#include <functional>
#include <memory>
#include <string>

namespace kysharp {

namespace detail {
class TransformMemo;
}

enum class WeightFamily { TypeA, TypeB, TypeC, Gaussian, Custom };

const char* to_string(WeightFamily family) noexcept;

/// Radial spatial weight w(|x|).
///
/// TypeA and TypeC are (1 + r^2)^{-s/2}, TypeB is r^{-s}, Gaussian is
/// exp(-r^2 / 2). Custom weights carry their own profile and, optionally,
/// a closed-form transform profile F_w(u); without one the transform is
/// computed numerically and memoized.
struct WeightSpec {
  WeightFamily family = WeightFamily::Gaussian;
  double s = 0.0;
  std::function<double(double)> profile;   // Custom only: w(r)
  std::function<double(double)> transform;  // Custom only, optional: F_w(u)
  std::shared_ptr<detail::TransformMemo> memo;  // shared by copies

  static WeightSpec type_a(double s) { return {WeightFamily::TypeA, s, {}, {}, {}}; }
  static WeightSpec type_b(double s) { return {WeightFamily::TypeB, s, {}, {}, {}}; }
  static WeightSpec type_c(double s) { return {WeightFamily::TypeC, s, {}, {}, {}}; }
  static WeightSpec gaussian() { return {WeightFamily::Gaussian, 0.0, {}, {}, {}}; }
  static WeightSpec custom(std::function<double(double)> profile,
                           std::function<double(double)> transform = {});
};

enum class DispersionKind { Schrodinger, Relativistic, Custom };

/// Radial dispersion phi: r^2, (r^2 + m^2)^{1/2}, or user supplied.
struct DispersionSpec {
  DispersionKind kind = DispersionKind::Schrodinger;
  double m = 0.0;
  std::function<double(double)> phi;   // Custom only
  std::function<double(double)> dphi;  // Custom only

  static DispersionSpec schrodinger() { return {}; }
  static DispersionSpec relativistic(double mass) {
    return {DispersionKind::Relativistic, mass, {}, {}};
  }

  double value(double r) const;
  double derivative(double r) const;
};

/// Smoothing function
///   psi(r) = scale * r^p * (1 + r^2)^q * (r^2 + mass^2)^{e/2} * extra(r).
///
/// The power-law part covers every choice the closed-form paths know about;
/// `extra` is an arbitrary positive factor (empty means 1). `reduced` marks a
/// spec produced by reduce_to_schrodinger so the reduction is not applied
/// twice.
struct SmoothingSpec {
  double scale = 1.0;
  double p = 0.0;
  double q = 0.0;
  double e = 0.0;
  double mass = 0.0;
  std::function<double(double)> extra;
  bool reduced = false;

  double operator()(double r) const;
  bool has_extra() const { return static_cast<bool>(extra); }
};

/// The canonical smoothing function of a weight family for the Schrodinger
/// equation: (1 + r^2)^{1/4} for TypeA, r^{(2-s)/2} for TypeB, r^{1/2} for
/// TypeC and 1 for the Gaussian weight.
SmoothingSpec family_smoothing(const WeightSpec& weight);

/// The Dirac counterpart: family_smoothing multiplied by phi_m^{-1/2}.
/// The Gaussian weight keeps psi = 1.
SmoothingSpec family_dirac_smoothing(const WeightSpec& weight, double m);

struct ProblemSpec {
  int d = 3;
  WeightSpec weight;
  SmoothingSpec smoothing;
  DispersionSpec dispersion;
};

/// Throws invalid_parameter when the family constraints do not hold for d
/// (TypeB: 1 < s < d; TypeC: s > 1; TypeA: s >= 2), when 2 <= d <= 6 fails,
/// or when the mass is negative.
void validate(const ProblemSpec& spec);

/// F_w(u): the d-dimensional Fourier transform of w(|x|) evaluated at
/// |xi| = sqrt(2u). Closed forms for TypeA, TypeB, TypeC and Gaussian;
/// Custom weights use their transform callable or the memoized numerical
/// Hankel transform.
double fw_eval(const WeightSpec& weight, int d, double u);

/// Numerical Hankel transform of the weight profile, integrated panel by
/// panel between consecutive zeros of J_{d/2-1} and summed with Wynn's
/// epsilon algorithm. Throws divergent_transform when the accelerated sums
/// do not settle.
double fw_hankel_numeric(const std::function<double(double)>& profile, int d, double u);

/// Independent transform of (1 + r^2)^{-s/2} through the Gaussian
/// subordination integral, evaluated with the trapezoid rule in log tau.
double fw_subordination(double s, int d, double u);

/// w(r) for oracle-side spatial quadrature.
double weight_profile(const WeightSpec& weight, double r);

/// Returns (w, sqrt(r / phi'(r)) psi, r^2), for which
/// C_d(w, psi, phi) = 2 C_d(reduced). Applying it to a spec that already
/// carries the reduced flag throws invalid_parameter.
ProblemSpec reduce_to_schrodinger(const ProblemSpec& spec);

/// Factory covering the equation variants exposed by the command line.
/// `equation` is one of schrodinger, relativistic, dirac, dirac-radial; the
/// relativistic and Dirac variants use phi_m with the Dirac-family psi.
ProblemSpec make_problem(int d, const WeightSpec& weight, const std::string& equation, double m);

}  // namespace kysharp
