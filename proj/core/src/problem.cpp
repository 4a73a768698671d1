#include "kysharp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "kysharp/error.hpp"
#include "kysharp/quadrature.hpp"

namespace kysharp {

namespace detail {

// Lazily filled table of F_w on a uniform grid in log u, shared by every
// copy of a Custom WeightSpec. Values between nodes come from 4-point
// Lagrange interpolation in log u.
class TransformMemo {
 public:
  explicit TransformMemo(std::function<double(double)> profile) : profile_(std::move(profile)) {}

  double operator()(int d, double u) {
    const double x = std::log(u) / kStep;
    const long i0 = static_cast<long>(std::floor(x)) - 1;
    double values[4];
    for (int j = 0; j < 4; ++j) values[j] = node(d, i0 + j);
    const double t = x - static_cast<double>(i0);  // in [1, 2)
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      double basis = 1.0;
      for (int l = 0; l < 4; ++l) {
        if (l != j) basis *= (t - l) / static_cast<double>(j - l);
      }
      sum += basis * values[j];
    }
    return sum;
  }

  static constexpr double kStep = std::numbers::ln10 / 64.0;

 private:
  double node(int d, long i) {
    const std::pair<int, long> key{d, i};
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    const double value = fw_hankel_numeric(profile_, d, std::exp(static_cast<double>(i) * kStep));
    std::unique_lock lock(mutex_);
    table_.emplace(key, value);
    return value;
  }

  std::function<double(double)> profile_;
  std::shared_mutex mutex_;
  std::map<std::pair<int, long>, double> table_;
};

}  // namespace detail

const char* to_string(WeightFamily family) noexcept {
  switch (family) {
    case WeightFamily::TypeA: return "A";
    case WeightFamily::TypeB: return "B";
    case WeightFamily::TypeC: return "C";
    case WeightFamily::Gaussian: return "gaussian";
    case WeightFamily::Custom: return "custom";
  }
  return "unknown";
}

WeightSpec WeightSpec::custom(std::function<double(double)> profile,
                              std::function<double(double)> transform) {
  WeightSpec w;
  w.family = WeightFamily::Custom;
  w.profile = std::move(profile);
  w.transform = std::move(transform);
  if (!w.transform) w.memo = std::make_shared<detail::TransformMemo>(w.profile);
  return w;
}

double DispersionSpec::value(double r) const {
  switch (kind) {
    case DispersionKind::Schrodinger: return r * r;
    case DispersionKind::Relativistic: return std::sqrt(r * r + m * m);
    case DispersionKind::Custom: return phi(r);
  }
  return 0.0;
}

double DispersionSpec::derivative(double r) const {
  switch (kind) {
    case DispersionKind::Schrodinger: return 2.0 * r;
    case DispersionKind::Relativistic: return m == 0.0 ? 1.0 : r / std::sqrt(r * r + m * m);
    case DispersionKind::Custom: return dphi(r);
  }
  return 0.0;
}

double SmoothingSpec::operator()(double r) const {
  double value = scale;
  if (p != 0.0) value *= std::pow(r, p);
  if (q != 0.0) value *= std::pow(1.0 + r * r, q);
  if (e != 0.0) value *= std::pow(r * r + mass * mass, 0.5 * e);
  if (extra) value *= extra(r);
  return value;
}

SmoothingSpec family_smoothing(const WeightSpec& weight) {
  SmoothingSpec psi;
  switch (weight.family) {
    case WeightFamily::TypeA: psi.q = 0.25; break;
    case WeightFamily::TypeB: psi.p = 0.5 * (2.0 - weight.s); break;
    case WeightFamily::TypeC: psi.p = 0.5; break;
    case WeightFamily::Gaussian:
    case WeightFamily::Custom: break;
  }
  return psi;
}

SmoothingSpec family_dirac_smoothing(const WeightSpec& weight, double m) {
  SmoothingSpec psi = family_smoothing(weight);
  if (weight.family != WeightFamily::Gaussian) {
    psi.e = -0.5;
    psi.mass = m;
  }
  return psi;
}

void validate(const ProblemSpec& spec) {
  const int d = spec.d;
  require(d >= 2 && d <= 6, ErrorKind::invalid_parameter,
          "dimension must satisfy 2 <= d <= 6, got " + std::to_string(d));
  const double s = spec.weight.s;
  switch (spec.weight.family) {
    case WeightFamily::TypeA:
      require(s >= 2.0, ErrorKind::invalid_parameter, "family A needs s >= 2");
      break;
    case WeightFamily::TypeB:
      require(s > 1.0 && s < d, ErrorKind::invalid_parameter, "family B needs 1 < s < d");
      break;
    case WeightFamily::TypeC:
      require(s > 1.0, ErrorKind::invalid_parameter, "family C needs s > 1");
      break;
    case WeightFamily::Gaussian: break;
    case WeightFamily::Custom:
      require(static_cast<bool>(spec.weight.profile) || static_cast<bool>(spec.weight.transform),
              ErrorKind::invalid_parameter, "custom weight needs a profile or a transform");
      break;
  }
  require(spec.dispersion.m >= 0.0, ErrorKind::invalid_parameter, "mass must be nonnegative");
  if (spec.dispersion.kind == DispersionKind::Custom) {
    require(static_cast<bool>(spec.dispersion.phi) && static_cast<bool>(spec.dispersion.dphi),
            ErrorKind::invalid_parameter, "custom dispersion needs phi and phi'");
  }
}

namespace {

constexpr double kPi = std::numbers::pi;

// (1 + r^2)^{-s/2} in d dimensions:
// (2 pi)^{d/2} 2^{1 - s/2} / Gamma(s/2) * z^{(s-d)/2} K_{|d-s|/2}(z), z = |xi|.
double fw_bessel_potential(double s, int d, double u) {
  const double z = std::sqrt(2.0 * u);
  const double log_pref = 0.5 * d * std::log(2.0 * kPi) + (1.0 - 0.5 * s) * std::numbers::ln2 -
                          std::lgamma(0.5 * s);
  const double nu = 0.5 * std::abs(d - s);
  double tail;
  if (s > d && z < 1e-8) {
    // z^nu K_nu(z) -> 2^{nu-1} Gamma(nu)
    tail = std::exp((nu - 1.0) * std::numbers::ln2 + std::lgamma(nu));
  } else if (z > 700.0) {
    return 0.0;
  } else {
    tail = std::pow(z, 0.5 * (s - d)) * std::cyl_bessel_k(nu, z);
  }
  return std::exp(log_pref) * tail;
}

double fw_power(double s, int d, double u) {
  const double log_kappa = (d - s) * std::numbers::ln2 + 0.5 * d * std::log(kPi) +
                           std::lgamma(0.5 * (d - s)) - std::lgamma(0.5 * s);
  return std::exp(log_kappa + 0.5 * (s - d) * std::log(2.0 * u));
}

double bessel_j_zero(double nu, int index) {
  const double beta = (index + 0.5 * nu - 0.25) * kPi;
  const double mu = 4.0 * nu * nu;
  const double b8 = 8.0 * beta;
  double x = beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
  for (int it = 0; it < 50; ++it) {
    const double j = std::cyl_bessel_j(nu, x);
    const double dj = nu / x * j - std::cyl_bessel_j(nu + 1.0, x);
    const double step = j / dj;
    x -= step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& sums) {
  const std::size_t n = sums.size();
  std::vector<double> prev(n + 1, 0.0);  // epsilon_{k-1}
  std::vector<double> cur(sums.begin(), sums.end());  // epsilon_k
  double best = sums.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0 || !std::isfinite(diff)) return best;
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev.assign(cur.begin(), cur.end());
    cur = std::move(next);
    if (k % 2 == 0) {
      if (!std::isfinite(cur.back())) return best;
      best = cur.back();
    }
  }
  return best;
}

}  // namespace

double fw_hankel_numeric(const std::function<double(double)>& profile, int d, double u) {
  require(u > 0.0, ErrorKind::invalid_parameter, "fw_hankel_numeric: u must be positive");
  const double q = std::sqrt(2.0 * u);
  const double nu = 0.5 * d - 1.0;
  const double half_d = 0.5 * d;
  auto integrand = [&](double x) {
    return profile(x / q) * std::pow(x, half_d) * std::cyl_bessel_j(nu, x);
  };

  // Geometric breakpoints resolve the profile near the origin, where it
  // varies on the scale x ~ q; beyond the first zero the panels are the
  // half-periods of the Bessel function.
  constexpr int kOrder = 24;
  const double first_zero = bessel_j_zero(nu, 1);
  std::vector<double> head{0.0};
  for (double b = q * 1e-12; b < first_zero; b *= 2.0) head.push_back(b);
  head.push_back(first_zero);
  double head_sum = 0.0;
  for (std::size_t i = 0; i + 1 < head.size(); ++i) {
    head_sum += quadrature::integrate_legendre(integrand, head[i], head[i + 1], kOrder);
  }

  constexpr int kPanels = 80;
  std::vector<double> partial;
  partial.reserve(kPanels);
  double running = head_sum;
  double left = first_zero;
  for (int m = 2; m <= kPanels + 1; ++m) {
    const double right = bessel_j_zero(nu, m);
    running += quadrature::integrate_legendre(integrand, left, right, kOrder);
    partial.push_back(running);
    left = right;
  }
  const double full = wynn_epsilon(partial);
  const double shorter = wynn_epsilon(std::vector<double>(partial.begin(), partial.end() - 16));
  const double scale = std::max(std::abs(full), std::abs(head_sum));
  require(std::isfinite(full) && std::abs(full - shorter) <= 1e-7 * scale + 1e-300,
          ErrorKind::divergent_transform,
          "fw_hankel_numeric: accelerated panel sums did not settle at u=" + std::to_string(u));
  return std::pow(2.0 * kPi, half_d) * std::pow(q, -d) * full;
}

double fw_subordination(double s, int d, double u) {
  require(s > 0.0 && u > 0.0, ErrorKind::invalid_parameter, "fw_subordination: need s > 0, u > 0");
  const double q2 = 2.0 * u;
  const double nu = 0.5 * (s - d);
  // integrand in y = log tau: exp(nu y - e^y - q^2 e^{-y} / 4)
  const double y_lo = std::log(0.25 * q2) - 5.0;
  const double y_hi = std::log(80.0 + std::sqrt(q2) + 10.0 * std::abs(nu));
  const double h = 0.01;
  const int n = static_cast<int>(std::ceil((y_hi - y_lo) / h));
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double y = y_lo + i * h;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * std::exp(nu * y - std::exp(y) - 0.25 * q2 * std::exp(-y));
  }
  return std::exp(0.5 * d * std::log(kPi) - std::lgamma(0.5 * s)) * h * sum;
}

double fw_eval(const WeightSpec& weight, int d, double u) {
  require(u > 0.0, ErrorKind::invalid_parameter, "fw_eval: u must be positive");
  switch (weight.family) {
    case WeightFamily::Gaussian:
      return std::pow(2.0 * kPi, 0.5 * d) * std::exp(-u);
    case WeightFamily::TypeB:
      require(weight.s > 0.0 && weight.s < d, ErrorKind::invalid_parameter,
              "fw_eval: family B needs 0 < s < d");
      return fw_power(weight.s, d, u);
    case WeightFamily::TypeA:
    case WeightFamily::TypeC:
      require(weight.s > 0.0, ErrorKind::invalid_parameter, "fw_eval: s must be positive");
      return fw_bessel_potential(weight.s, d, u);
    case WeightFamily::Custom:
      if (weight.transform) return weight.transform(u);
      require(static_cast<bool>(weight.memo), ErrorKind::invalid_parameter,
              "fw_eval: custom weight has neither a transform nor a profile");
      return (*weight.memo)(d, u);
  }
  return 0.0;
}

double weight_profile(const WeightSpec& weight, double r) {
  switch (weight.family) {
    case WeightFamily::TypeA:
    case WeightFamily::TypeC: return std::pow(1.0 + r * r, -0.5 * weight.s);
    case WeightFamily::TypeB: return std::pow(r, -weight.s);
    case WeightFamily::Gaussian: return std::exp(-0.5 * r * r);
    case WeightFamily::Custom:
      require(static_cast<bool>(weight.profile), ErrorKind::invalid_parameter,
              "weight_profile: custom weight has no profile");
      return weight.profile(r);
  }
  return 0.0;
}

ProblemSpec reduce_to_schrodinger(const ProblemSpec& spec) {
  require(!spec.smoothing.reduced, ErrorKind::invalid_parameter,
          "reduce_to_schrodinger: spec is already reduced");
  ProblemSpec out = spec;
  SmoothingSpec& psi = out.smoothing;
  switch (spec.dispersion.kind) {
    case DispersionKind::Schrodinger:
      psi.scale *= std::sqrt(0.5);
      break;
    case DispersionKind::Relativistic:
      // sqrt(r / phi_m') = (r^2 + m^2)^{1/4}
      if (psi.e != 0.0) {
        require(psi.mass == spec.dispersion.m, ErrorKind::invalid_parameter,
                "reduce_to_schrodinger: smoothing mass differs from the dispersion mass");
      }
      psi.mass = spec.dispersion.m;
      psi.e += 0.5;
      break;
    case DispersionKind::Custom: {
      auto dphi = spec.dispersion.dphi;
      auto prev = psi.extra;
      psi.extra = [dphi, prev](double r) {
        const double f = std::sqrt(r / dphi(r));
        return prev ? f * prev(r) : f;
      };
      break;
    }
  }
  out.dispersion = DispersionSpec::schrodinger();
  psi.reduced = true;
  return out;
}

ProblemSpec make_problem(int d, const WeightSpec& weight, const std::string& equation, double m) {
  ProblemSpec spec;
  spec.d = d;
  spec.weight = weight;
  if (equation == "schrodinger") {
    spec.dispersion = DispersionSpec::schrodinger();
    spec.smoothing = family_smoothing(weight);
  } else if (equation == "relativistic" || equation == "dirac" || equation == "dirac-radial") {
    spec.dispersion = DispersionSpec::relativistic(m);
    spec.smoothing = family_dirac_smoothing(weight, m);
  } else {
    throw Error(ErrorKind::invalid_parameter, "unknown equation '" + equation + "'");
  }
  validate(spec);
  return spec;
}

}  // namespace kysharp
