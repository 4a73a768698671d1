#include "kysharp/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include "kysharp/error.hpp"
#include "kysharp/parallel.hpp"
#include "kysharp/quadrature.hpp"
#include "kysharp/specialfn.hpp"

namespace kysharp {

namespace {

double sum_rule(const quadrature::Rule& rule, const std::function<double(double)>& g) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * g(rule.nodes[i]);
  return sum;
}

double mu_with(const std::function<double(double)>& F, int d, int k, const QuadratureScheme& scheme,
               int n) {
  const double ex = 0.5 * (d - 3);
  double alpha = 0.0, beta = 0.0;
  switch (scheme.rule) {
    case QuadratureScheme::Rule::gauss_legendre: break;
    case QuadratureScheme::Rule::gauss_chebyshev: alpha = beta = -0.5; break;
    case QuadratureScheme::Rule::gauss_jacobi:
      alpha = scheme.alpha;
      beta = scheme.beta;
      break;
    case QuadratureScheme::Rule::adaptive: alpha = beta = ex; break;
  }
  const quadrature::Rule& rule = quadrature::gauss_jacobi(n, alpha, beta);
  const double ea = ex - alpha;
  const double eb = ex - beta;
  auto g = [&](double t) {
    double v = F(t) * specialfn::legendre_d(d, k, t);
    if (ea != 0.0) v *= std::pow(1.0 - t, ea);
    if (eb != 0.0) v *= std::pow(1.0 + t, eb);
    return v;
  };
  return specialfn::sphere_measure(d - 2) * sum_rule(rule, g);
}

}  // namespace

Estimate mu_k(const std::function<double(double)>& F, int d, int k, const QuadratureScheme& scheme) {
  require(d >= 2, ErrorKind::invalid_parameter, "mu_k: d must be >= 2");
  require(k >= 0, ErrorKind::invalid_parameter, "mu_k: k must be >= 0");
  require(scheme.node_count >= 1, ErrorKind::invalid_parameter, "mu_k: node_count must be >= 1");
  int n = scheme.node_count;
  double coarse = mu_with(F, d, k, scheme, n);
  double fine = mu_with(F, d, k, scheme, 2 * n);
  if (scheme.rule == QuadratureScheme::Rule::adaptive) {
    while (std::abs(fine - coarse) > scheme.tolerance * (1.0 + std::abs(fine))) {
      n *= 2;
      if (2 * n > 4096) {
        throw Error(ErrorKind::quadrature_failure,
                    "mu_k: no convergence with 4096 nodes for k=" + std::to_string(k));
      }
      coarse = fine;
      fine = mu_with(F, d, k, scheme, 2 * n);
    }
  }
  return {fine, std::abs(fine - coarse)};
}

const char* to_string(CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::schrodinger: return "schrodinger";
    case CurveKind::dirac: return "dirac";
    case CurveKind::dirac_radial: return "dirac_radial";
  }
  return "unknown";
}

LambdaEvaluator::LambdaEvaluator(ProblemSpec spec) : LambdaEvaluator(std::move(spec), Options{}) {}

LambdaEvaluator::LambdaEvaluator(ProblemSpec spec, Options options)
    : spec_(std::move(spec)), options_(options) {
  validate(spec_);
  require(options_.panel_order >= 4, ErrorKind::invalid_parameter, "panel_order must be >= 4");
}

double LambdaEvaluator::prefactor(double r) const {
  const double psi = spec_.smoothing(r);
  return std::pow(r, spec_.d - 1) * psi * psi / std::abs(spec_.dispersion.derivative(r));
}

void LambdaEvaluator::accumulate(double r, int k_max, int order, std::vector<double>& mu) const {
  const int d = spec_.d;
  const WeightSpec& w = spec_.weight;
  const double ex = 0.5 * (d - 3);
  mu.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  std::vector<double> p(static_cast<std::size_t>(k_max) + 1);

  auto add_node = [&](double t, double weight) {
    if (weight == 0.0) return;
    specialfn::legendre_d_all(d, k_max, t, p.data());
    for (int k = 0; k <= k_max; ++k) mu[k] += weight * p[k];
  };

  if (w.family == WeightFamily::TypeB) {
    // F_w(r^2 (1-t)) = F_w(r^2) (1-t)^{(s-d)/2}: exact with one rule.
    const int n = k_max / 2 + order / 3;
    const quadrature::Rule& rule = quadrature::gauss_jacobi(n, 0.5 * (w.s - 3.0), ex);
    const double c = fw_eval(w, d, r * r);
    for (std::size_t i = 0; i < rule.size(); ++i) add_node(rule.nodes[i], c * rule.weights[i]);
  } else {
    const double r2 = r * r;
    // Right half, t = 1 - v^2 with v in [0, 1]:
    //   dt (1-t^2)^{(d-3)/2} = 2 v^{d-2} (2 - v^2)^{(d-3)/2} dv.
    double lead = d - 2.0;
    if ((w.family == WeightFamily::TypeA || w.family == WeightFamily::TypeC) && w.s < d) {
      lead = w.s - 2.0;
    }
    const double v_scale = std::min(1.0, 1.0 / r);
    const double v_min = 1e-7 * v_scale;
    auto right = [&](double v, double weight_without_lead) {
      const double v2 = v * v;
      double g = 2.0 * weight_without_lead * fw_eval(w, d, r2 * v2);
      if (ex != 0.0) g *= std::pow(2.0 - v2, ex);
      add_node(1.0 - v2, g);
    };
    {
      // [0, v_min] with weight v^lead
      const quadrature::Rule& rule = quadrature::gauss_jacobi(order, 0.0, lead);
      const double half = 0.5 * v_min;
      const double scale = std::pow(half, lead + 1.0);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = half * (1.0 + rule.nodes[i]);
        // v^{d-2} / v^{lead} is the part of the weight not carried by the rule.
        const double rest = (d - 2.0 == lead) ? 1.0 : std::pow(v, d - 2.0 - lead);
        right(v, scale * rule.weights[i] * rest);
      }
    }
    const double oscillation_edge = 4.0 / (k_max + 1.0);
    for (double a = v_min; a < 1.0; a *= 2.0) {
      const double b = std::min(1.0, 2.0 * a);
      const int n = (b > oscillation_edge) ? std::max(order, k_max + order / 3) : order;
      const quadrature::Rule& rule = quadrature::gauss_legendre(n);
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (b + a);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = mid + half * rule.nodes[i];
        right(v, half * rule.weights[i] * std::pow(v, d - 2.0));
      }
    }
    // Left half, t = (x - 1) / 2 with x in [-1, 1] and weight (1+x)^{(d-3)/2}.
    const int n_left = std::max(order + order / 3, k_max + order);
    const quadrature::Rule& rule = quadrature::gauss_jacobi(n_left, 0.0, ex);
    const double scale = std::pow(0.5, ex + 1.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double t = 0.5 * (rule.nodes[i] - 1.0);
      double g = scale * rule.weights[i] * fw_eval(w, d, r2 * (1.0 - t));
      if (ex != 0.0) g *= std::pow(1.0 - t, ex);
      add_node(t, g);
    }
  }
  const double measure = specialfn::sphere_measure(d - 2);
  for (double& m : mu) m *= measure;
}

std::vector<double> LambdaEvaluator::lambda(double r, int k_max, std::vector<double>* errors) const {
  require(r > 0.0 && std::isfinite(r), ErrorKind::invalid_parameter,
          "lambda: r must be positive and finite");
  require(k_max >= 0, ErrorKind::invalid_parameter, "lambda: k_max must be >= 0");
  std::vector<double> mu;
  accumulate(r, k_max, options_.panel_order, mu);
  const double pre = prefactor(r);
  for (double& m : mu) m *= pre;
  if (errors != nullptr || options_.estimate_error) {
    std::vector<double> fine;
    accumulate(r, k_max, 2 * options_.panel_order, fine);
    std::vector<double> err(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) err[k] = std::abs(fine[k] * pre - mu[k]);
    if (errors != nullptr) *errors = std::move(err);
  }
  return mu;
}

double LambdaEvaluator::lambda_k(int k, double r) const { return lambda_k_estimate(k, r).value; }

Estimate LambdaEvaluator::lambda_k_estimate(int k, double r) const {
  if (k < 0) {
    require(spec_.d == 2, ErrorKind::invalid_parameter, "lambda_k: negative k only exists for d = 2");
    k = -k;
  }
  std::vector<double> err;
  const std::vector<double> values = lambda(r, k, &err);
  return {values[k], err[k]};
}

double dirac_combination(double lk, double lk1, double m, double r) {
  const double phi = std::sqrt(r * r + m * m);
  const double mass_term = (m == 0.0) ? 0.0 : m / (2.0 * phi) * std::abs(lk - lk1);
  return 0.5 * (lk + lk1) + mass_term;
}

double dirac_radial_combination(double l0, double l1, double m, double r) {
  const double m2 = m * m;
  const double factor = (m == 0.0) ? 0.0 : m2 / (r * r + m2);
  return 0.5 * (l0 + l1 + factor * (l0 - l1));
}

std::vector<double> LambdaEvaluator::dirac_lambda(double r, int k_max, std::vector<double>* errors) const {
  require(spec_.dispersion.kind == DispersionKind::Relativistic, ErrorKind::invalid_parameter,
          "dirac curves need the relativistic dispersion");
  std::vector<double> err;
  const std::vector<double> l = lambda(r, k_max + 1, errors ? &err : nullptr);
  const double m = spec_.dispersion.m;
  std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) out[k] = dirac_combination(l[k], l[k + 1], m, r);
  if (errors != nullptr) {
    errors->resize(out.size());
    for (int k = 0; k <= k_max; ++k) (*errors)[k] = err[k] + err[k + 1];
  }
  return out;
}

Estimate LambdaEvaluator::dirac_lambda_rad(double r) const {
  require(spec_.dispersion.kind == DispersionKind::Relativistic, ErrorKind::invalid_parameter,
          "dirac curves need the relativistic dispersion");
  std::vector<double> err;
  const std::vector<double> l = lambda(r, 1, &err);
  return {dirac_radial_combination(l[0], l[1], spec_.dispersion.m, r), err[0] + err[1]};
}

double lambda_k(const ProblemSpec& spec, int k, double r) { return LambdaEvaluator(spec).lambda_k(k, r); }

double dirac_lambda_k(const ProblemSpec& spec, int k, double r) {
  require(k >= 0, ErrorKind::invalid_parameter, "dirac_lambda_k: k must be >= 0");
  return LambdaEvaluator(spec).dirac_lambda(r, k)[k];
}

double dirac_lambda_rad(const ProblemSpec& spec, double r) {
  return LambdaEvaluator(spec).dirac_lambda_rad(r).value;
}

std::vector<LambdaProfile> sample_profiles(const ProblemSpec& spec, int k_max, CurveKind kind,
                                           const std::vector<double>& r_grid) {
  require(k_max >= 0, ErrorKind::invalid_parameter, "sample_profiles: k_max must be >= 0");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    require(r_grid[i] > 0.0 && (i == 0 || r_grid[i] > r_grid[i - 1]), ErrorKind::invalid_parameter,
            "sample_profiles: grid must be positive and strictly increasing");
  }
  const int curves = (kind == CurveKind::dirac_radial) ? 1 : k_max + 1;
  std::vector<LambdaProfile> out(static_cast<std::size_t>(curves));
  for (int k = 0; k < curves; ++k) {
    out[k].k = k;
    out[k].kind = kind;
    out[k].r_grid = r_grid;
    out[k].values.resize(r_grid.size());
    out[k].errors.resize(r_grid.size());
  }
  const LambdaEvaluator eval(spec);
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const double r = r_grid[i];
    std::vector<double> err;
    std::vector<double> values;
    switch (kind) {
      case CurveKind::schrodinger: values = eval.lambda(r, k_max, &err); break;
      case CurveKind::dirac: values = eval.dirac_lambda(r, k_max, &err); break;
      case CurveKind::dirac_radial: {
        const Estimate e = eval.dirac_lambda_rad(r);
        values = {e.value};
        err = {e.error};
        break;
      }
    }
    for (int k = 0; k < curves; ++k) {
      out[k].values[i] = values[k];
      out[k].errors[i] = err[k];
    }
  });
  return out;
}

LambdaProfile sample_profile(const ProblemSpec& spec, int k, CurveKind kind,
                             const std::vector<double>& r_grid) {
  if (k < 0) {
    require(spec.d == 2 && kind == CurveKind::schrodinger, ErrorKind::invalid_parameter,
            "sample_profile: negative k only exists for d = 2 Schrodinger curves");
    LambdaProfile p = sample_profile(spec, -k, kind, r_grid);
    p.k = k;
    return p;
  }
  if (kind == CurveKind::dirac_radial) return sample_profiles(spec, 0, kind, r_grid).front();
  std::vector<LambdaProfile> all = sample_profiles(spec, k, kind, r_grid);
  return std::move(all.back());
}

void write_profiles_csv(std::ostream& out, const std::vector<LambdaProfile>& profiles) {
  out << "k,r,value,err_estimate,kind\n";
  char buf[128];
  for (const LambdaProfile& p : profiles) {
    for (std::size_t i = 0; i < p.r_grid.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%s\n", p.k, p.r_grid[i], p.values[i],
                    p.errors[i], to_string(p.kind));
      out << buf;
    }
  }
}

std::vector<double> log_grid(double r_min, double r_max, int n) {
  require(r_min > 0.0 && r_max >= r_min && n >= 1, ErrorKind::invalid_parameter,
          "log_grid: need 0 < r_min <= r_max and n >= 1");
  std::vector<double> grid(static_cast<std::size_t>(n));
  if (n == 1) {
    grid[0] = r_min;
    return grid;
  }
  const double a = std::log(r_min);
  const double b = std::log(r_max);
  for (int i = 0; i < n; ++i) grid[i] = std::exp(a + (b - a) * i / (n - 1));
  grid.back() = r_max;
  return grid;
}

}  // namespace kysharp
