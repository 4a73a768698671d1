#include "kysharp/optimum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kysharp/error.hpp"
#include "kysharp/parallel.hpp"

namespace kysharp {

namespace {

constexpr double kPi = std::numbers::pi;

double normalization(int d) { return std::pow(2.0 * kPi, d - 1); }

// A flat run must cover at least this fraction of its right end.
constexpr double kFlatRelativeLength = 1e-2;

struct Canonical {
  double scale, p, q, e;
};

// Powers of psi with r^2 + 0^2 folded into r^p.
std::optional<Canonical> canonical(const SmoothingSpec& psi) {
  if (psi.has_extra()) return std::nullopt;
  if (psi.mass == 0.0) return Canonical{psi.scale, psi.p + psi.e, psi.q, 0.0};
  return Canonical{psi.scale, psi.p, psi.q, psi.e};
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

struct Known {
  double value;
  Location location;
  Extremiser extremiser;
};

// Closed forms for phi = r^2.
std::optional<Known> known_schrodinger(const ProblemSpec& spec) {
  if (spec.dispersion.kind != DispersionKind::Schrodinger) return std::nullopt;
  const auto c = canonical(spec.smoothing);
  if (!c || !near(c->e, 0.0)) return std::nullopt;
  const double a = c->scale * c->scale;
  const double s = spec.weight.s;
  switch (spec.weight.family) {
    case WeightFamily::TypeB:
      if (near(c->q, 0.0) && near(c->p, (2.0 - s) / 2.0))
        return Known{a * closed_form::type_b(spec.d, s), Location::flat_interval,
                     Extremiser::exists_flat_interval};
      break;
    case WeightFamily::TypeC:
      if (spec.d >= 3 && near(c->q, 0.0) && near(c->p, 0.5))
        return Known{a * closed_form::type_c(s), Location::limit_infinity, Extremiser::none_detected};
      break;
    case WeightFamily::TypeA:
      if (near(s, 2.0) && near(c->q, 0.25) && near(c->p, 0.0)) {
        if (auto v = closed_form::type_a_s2(spec.d))
          return Known{a * *v, spec.d == 3 ? Location::limit_zero : Location::unknown,
                       Extremiser::none_detected};
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

// C_d(w, psi, phi) for any dispersion the reduction maps onto a known case.
std::optional<Known> known_general(const ProblemSpec& spec) {
  if (spec.dispersion.kind == DispersionKind::Schrodinger) return known_schrodinger(spec);
  if (spec.smoothing.reduced) return std::nullopt;
  auto k = known_schrodinger(reduce_to_schrodinger(spec));
  if (k) k->value *= 2.0;
  return k;
}

// Closed forms of the Dirac constant and of the radial Dirac constant.
// Both agree for these families; `radial` only widens the dimension range.
std::optional<Known> known_dirac(const ProblemSpec& spec, bool radial) {
  if (spec.dispersion.kind != DispersionKind::Relativistic || spec.smoothing.reduced) return std::nullopt;
  const auto k = known_schrodinger(reduce_to_schrodinger(spec));
  if (!k) return std::nullopt;
  const double m = spec.dispersion.m;
  const double s = spec.weight.s;
  const int d = spec.d;
  switch (spec.weight.family) {
    case WeightFamily::TypeB:
      if (m > 0.0) return Known{2.0 * k->value, Location::limit_zero, Extremiser::none_detected};
      if (d <= 3 || radial)
        return Known{2.0 * k->value * (1.0 - (s - 1.0) / (d + s - 2.0)), Location::flat_interval,
                     Extremiser::exists_flat_interval};
      break;
    case WeightFamily::TypeC:
      if (d >= 3) return Known{2.0 * k->value, Location::limit_infinity, Extremiser::unknown};
      break;
    default:
      break;
  }
  return std::nullopt;
}

ConstantReport from_known(const Known& k) {
  ConstantReport report;
  report.value = k.value;
  report.method = Method::closed_form;
  report.location = k.location;
  report.extremiser = k.extremiser;
  report.attaining_k = 0;
  report.error_estimate = 0.0;
  return report;
}

ConstantReport from_search(const SupResult& result, const SearchPolicy& policy) {
  ConstantReport report;
  report.value = result.value;
  report.method = Method::numeric_sup;
  report.attaining_k = result.k;
  report.location = result.location;
  if (result.location == Location::interior || result.location == Location::flat_interval)
    report.attaining_r = result.r;
  if (result.location == Location::flat_interval) report.attaining_r_end = result.r_end;
  report.extremiser = extremiser_diagnosis(result, result.value, policy);
  report.error_estimate = result.error;
  report.per_k_maxima = result.per_k_max;
  report.k_scan_stopped_early = result.stopped_early;
  report.notes = result.notes;
  return report;
}

double golden_max(const std::function<double(double)>& f, double a, double b, int iterations,
                  double& arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  if (f1 >= f2) {
    arg = x1;
    return f1;
  }
  arg = x2;
  return f2;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

void validate(const SearchPolicy& policy) {
  require(policy.r_min > 0.0 && policy.r_min < policy.r_max, ErrorKind::invalid_parameter,
          "search policy: need 0 < r_min < r_max");
  require(policy.k_max >= 1, ErrorKind::invalid_parameter, "search policy: k_max must be >= 1");
  require(policy.points_per_decade >= 2, ErrorKind::invalid_parameter,
          "search policy: points per decade must be >= 2");
  require(policy.golden_iterations >= 1, ErrorKind::invalid_parameter,
          "search policy: golden-section iterations must be >= 1");
  require(policy.eps_flat > 0.0 && policy.eps_flat < 1.0, ErrorKind::invalid_parameter,
          "search policy: eps_flat must lie in (0, 1)");
  require(policy.decreasing_run >= 1, ErrorKind::invalid_parameter,
          "search policy: decreasing run must be >= 1");
}

const char* to_string(Location location) noexcept {
  switch (location) {
    case Location::interior: return "interior";
    case Location::flat_interval: return "flat_interval";
    case Location::limit_zero: return "r->0+";
    case Location::limit_infinity: return "r->inf";
    case Location::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(Extremiser extremiser) noexcept {
  switch (extremiser) {
    case Extremiser::exists_flat_interval: return "exists_flat_interval";
    case Extremiser::none_detected: return "none_detected";
    case Extremiser::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::closed_form: return "closed_form";
    case Method::numeric_sup: return "numeric_sup";
    case Method::bound_only: return "bound_only";
  }
  return "numeric_sup";
}

SupResult sup_search(const CurveBatch& curves, const SearchPolicy& policy, int k_cap) {
  validate(policy);
  const int k_limit = k_cap >= 0 ? std::min(k_cap, policy.k_max) : policy.k_max;
  const double decades = std::log10(policy.r_max / policy.r_min);
  const int n = std::max(3, static_cast<int>(std::lround(decades * policy.points_per_decade)) + 1);

  SupResult out;
  out.grid = log_grid(policy.r_min, policy.r_max, n);

  int K = std::min(k_limit, 16);
  for (;;) {
    std::vector<std::vector<double>> rows(n);
    parallel_for(n, [&](std::size_t i) { rows[i] = curves(out.grid[i], K, nullptr); });
    out.values.assign(K + 1, std::vector<double>(n));
    out.per_k_max.assign(K + 1, 0.0);
    for (int k = 0; k <= K; ++k) {
      double mx = -HUGE_VAL;
      for (int i = 0; i < n; ++i) {
        out.values[k][i] = rows[i][k];
        mx = std::max(mx, rows[i][k]);
      }
      out.per_k_max[k] = mx;
    }
    int run = 0, stop = -1;
    for (int k = 1; k <= K; ++k) {
      run = out.per_k_max[k] < out.per_k_max[k - 1] ? run + 1 : 0;
      if (run >= policy.decreasing_run) {
        stop = k;
        break;
      }
    }
    if (stop >= 0) {
      out.stopped_early = true;
      out.values.resize(stop + 1);
      out.per_k_max.resize(stop + 1);
      out.notes.push_back("k-scan stopped at k = " + std::to_string(stop) + " after " +
                          std::to_string(policy.decreasing_run) + " decreasing per-k maxima");
      break;
    }
    if (K == k_limit) break;
    K = std::min(2 * K, k_limit);
  }

  const int kk = static_cast<int>(out.per_k_max.size()) - 1;
  int best_k = 0;
  for (int k = 1; k <= kk; ++k)
    if (out.per_k_max[k] > out.per_k_max[best_k]) best_k = k;
  if (!out.stopped_early && kk == policy.k_max && best_k == kk && kk > 0)
    throw Error(ErrorKind::sup_not_localized,
                "sup over k still grows at k_max = " + std::to_string(kk) + "; raise k_max");

  const auto& v = out.values[best_k];
  const int i_best = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  const double best = v[i_best];
  const double floor = best - policy.eps_flat * std::abs(best);
  int a = i_best, b = i_best;
  while (a > 0 && v[a - 1] >= floor) --a;
  while (b < n - 1 && v[b + 1] >= floor) ++b;

  auto curve = [&](double r) { return curves(r, best_k, nullptr)[best_k]; };
  out.k = best_k;
  out.value = best;

  auto refine = [&](double lo, double hi) {
    double u = 0.0;
    const double val = golden_max([&](double t) { return curve(std::exp(t)); }, std::log(lo),
                                  std::log(hi), policy.golden_iterations, u);
    out.r = std::exp(u);
    out.value = std::max(best, val);
    if (val < best) out.r = out.grid[i_best];
    out.location = Location::interior;
  };

  const bool at_left = a == 0, at_right = b == n - 1;
  if (at_left && at_right) {
    out.location = Location::flat_interval;
    out.r = out.grid.front();
    out.r_end = out.grid.back();
  } else if (at_left || at_right) {
    const double x = at_left ? out.grid.front() : out.grid.back();
    const double step = at_left ? 0.1 : 10.0;
    const double f0 = v[at_left ? 0 : n - 1];
    const double f1 = curve(x * step);
    if (f1 < f0 - policy.eps_flat * std::abs(f0)) {
      if (a == b) {
        refine(at_left ? x * step : out.grid[n - 2], at_left ? out.grid[1] : x * step);
      } else {
        out.location = Location::flat_interval;
        out.r = out.grid[a];
        out.r_end = out.grid[b];
      }
    } else {
      const double f2 = curve(x * step * step);
      // f ~ L + c r at the left edge, f ~ L + c / r at the right edge.
      const double l1 = (10.0 * f1 - f0) / 9.0;
      const double l2 = (10.0 * f2 - f1) / 9.0;
      const double gap = std::abs(l1 - l2);
      if (gap > policy.extrapolation_tolerance * std::abs(l2))
        throw Error(ErrorKind::sup_not_localized,
                    std::string("boundary extrapolation towards ") + (at_left ? "r->0+" : "r->inf") +
                        " did not settle: " + fmt(l1) + " vs " + fmt(l2));
      out.location = at_left ? Location::limit_zero : Location::limit_infinity;
      out.value = std::max({l2, f2, best});
      out.error = gap;
      out.r = x * step * step;
      out.notes.push_back(std::string("sup approached as ") + to_string(out.location) +
                          "; extrapolated from r = " + fmt(x) + ", " + fmt(x * step) + ", " +
                          fmt(x * step * step));
    }
  } else if (a == b) {
    refine(out.grid[i_best - 1], out.grid[i_best + 1]);
  } else {
    out.location = Location::flat_interval;
    out.r = out.grid[a];
    out.r_end = out.grid[b];
  }

  std::vector<double> errs;
  const double probe = out.location == Location::flat_interval ? out.grid[a] : out.r;
  const auto vals = curves(probe, best_k, &errs);
  if (errs.size() > static_cast<std::size_t>(best_k)) out.error += errs[best_k];
  (void)vals;
  return out;
}

Extremiser extremiser_diagnosis(const SupResult& result, double sup_value, const SearchPolicy& policy) {
  const double floor = sup_value - policy.eps_flat * std::abs(sup_value);
  const auto& g = result.grid;
  const int n = static_cast<int>(g.size());
  bool ambiguous = false;
  for (const auto& v : result.values) {
    for (int i = 0; i < n;) {
      if (v[i] < floor) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 < n && v[j + 1] >= floor) ++j;
      if ((g[j] - g[i]) / g[j] >= kFlatRelativeLength) {
        const bool left = i == 0, right = j == n - 1;
        if (left != right)
          ambiguous = true;  // plateau or asymptote at one edge; the grid cannot tell
        else
          return Extremiser::exists_flat_interval;
      }
      i = j + 1;
    }
  }
  return ambiguous ? Extremiser::unknown : Extremiser::none_detected;
}

ConstantReport schrodinger_constant(const ProblemSpec& spec, const SearchPolicy& policy) {
  validate(spec);
  validate(policy);
  if (policy.prefer_closed_form)
    if (auto k = known_general(spec)) return from_known(*k);

  const LambdaEvaluator ev(spec);
  const double norm = normalization(spec.d);
  const CurveBatch batch = [&](double r, int K, std::vector<double>* errors) {
    auto out = ev.lambda(r, K, errors);
    for (auto& x : out) x /= norm;
    if (errors)
      for (auto& x : *errors) x /= norm;
    return out;
  };
  return from_search(sup_search(batch, policy), policy);
}

ConstantReport dirac_radial_constant(const ProblemSpec& spec, const SearchPolicy& policy) {
  validate(spec);
  validate(policy);
  require(spec.dispersion.kind == DispersionKind::Relativistic, ErrorKind::invalid_parameter,
          "dirac_radial_constant: needs the relativistic dispersion phi_m");
  if (policy.prefer_closed_form)
    if (auto k = known_dirac(spec, true)) return from_known(*k);

  const LambdaEvaluator ev(spec);
  const double norm = normalization(spec.d);
  const CurveBatch batch = [&](double r, int, std::vector<double>* errors) {
    const Estimate e = ev.dirac_lambda_rad(r);
    if (errors) errors->assign(1, e.error / norm);
    return std::vector<double>{e.value / norm};
  };
  return from_search(sup_search(batch, policy, 0), policy);
}

ConstantReport dirac_constant(const ProblemSpec& spec, const SearchPolicy& policy) {
  validate(spec);
  validate(policy);
  require(spec.dispersion.kind == DispersionKind::Relativistic, ErrorKind::invalid_parameter,
          "dirac_constant: needs the relativistic dispersion phi_m");

  if (spec.d >= 4) {
    const ConstantReport upper = schrodinger_constant(spec, policy);
    const ConstantReport lower = dirac_radial_constant(spec, policy);
    ConstantReport report;
    report.method = Method::bound_only;
    report.value = upper.value;
    report.upper_bound = upper.value;
    report.lower_bound = lower.value;
    report.error_estimate = upper.error_estimate + lower.error_estimate;
    report.extremiser = Extremiser::unknown;
    report.notes.push_back("d >= 4: value is the upper bound C_d(w, psi, phi_m); lower bound is the radial constant");
    return report;
  }

  if (policy.prefer_closed_form)
    if (auto k = known_dirac(spec, false)) return from_known(*k);

  const LambdaEvaluator ev(spec);
  const double norm = normalization(spec.d);
  const CurveBatch batch = [&](double r, int K, std::vector<double>* errors) {
    auto out = ev.dirac_lambda(r, K, errors);
    for (auto& x : out) x /= norm;
    if (errors)
      for (auto& x : *errors) x /= norm;
    return out;
  };
  return from_search(sup_search(batch, policy), policy);
}

EquivalenceReport equivalence_check(const ProblemSpec& spec, const SearchPolicy& policy) {
  validate(spec);
  require(spec.d == 2 || spec.d == 3, ErrorKind::unsupported_dimension,
          "equivalence_check: d must be 2 or 3");
  require(spec.dispersion.kind == DispersionKind::Relativistic, ErrorKind::invalid_parameter,
          "equivalence_check: needs the relativistic dispersion phi_m");
  EquivalenceReport out;
  const ConstantReport upper = schrodinger_constant(spec, policy);
  const ConstantReport reduced = schrodinger_constant(reduce_to_schrodinger(spec), policy);
  out.dirac_report = dirac_constant(spec, policy);
  out.upper = upper.value;
  out.reduced_twice = 2.0 * reduced.value;
  out.lower = out.upper / 2.0;
  out.dirac = out.dirac_report.value;
  out.tolerance = 2.0 * (upper.error_estimate + 2.0 * reduced.error_estimate +
                         out.dirac_report.error_estimate) +
                  1e-9 * out.upper;
  out.pass = out.lower <= out.dirac + out.tolerance && out.dirac <= out.upper + out.tolerance &&
             std::abs(out.upper - out.reduced_twice) <= out.tolerance;
  return out;
}

namespace closed_form {

double c_k(int d, double s, int k) {
  const double lg = std::lgamma(s - 1.0) + std::lgamma((d - s) / 2.0 + k) - 2.0 * std::lgamma(s / 2.0) -
                    std::lgamma((d + s) / 2.0 + k - 1.0);
  return std::pow(2.0, 2.0 - s) * kPi * std::exp(lg);
}

double type_b(int d, double s) { return c_k(d, s, 0) / 2.0; }

double type_c(double s) {
  return std::sqrt(kPi) * std::exp(std::lgamma((s - 1.0) / 2.0) - std::lgamma(s)) / 2.0;
}

std::optional<double> type_a_s2(int d) {
  if (d == 3) return kPi;
  if (d >= 5) return kPi / 2.0;
  return std::nullopt;
}

double type_b_dirac_gamma(int d, double s, double m) {
  const double base = std::pow(2.0, 2.0 - s) * kPi *
                      std::exp(std::lgamma(s - 1.0) + std::lgamma((d - s) / 2.0) -
                               2.0 * std::lgamma(s / 2.0) - std::lgamma((d + s) / 2.0 - 1.0));
  return m > 0.0 ? base : (1.0 - (s - 1.0) / (d + s - 2.0)) * base;
}

double type_b_dirac_ck(int d, double s, double m) {
  return m > 0.0 ? c_k(d, s, 0) : (c_k(d, s, 0) + c_k(d, s, 1)) / 2.0;
}

}  // namespace closed_form

}  // namespace kysharp
