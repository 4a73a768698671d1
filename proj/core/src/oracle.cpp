#include "kysharp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kysharp/error.hpp"
#include "kysharp/harmonics.hpp"
#include "kysharp/keyvalue.hpp"
#include "kysharp/lambda.hpp"
#include "kysharp/parallel.hpp"
#include "kysharp/quadrature.hpp"
#include "kysharp/specialfn.hpp"

namespace kysharp::oracle {

namespace {

using dirac::CMatrix;
using dirac::Complex;
constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

int spinor_size(int d) { return d == 2 ? 2 : 4; }

// Degrees carried by the two coefficient blocks of a mode.
std::pair<int, int> block_degrees(const ModeInput& in) {
  if (in.d == 2) return {std::abs(in.k), std::abs(in.k + 1)};
  return {in.k, in.k + 1};
}

void check_spec(const ModeInput& input, const ProblemSpec& spec) {
  require(spec.d == input.d, ErrorKind::invalid_parameter, "oracle: spec and mode dimensions differ");
  require(spec.dispersion.kind == DispersionKind::Relativistic, ErrorKind::invalid_parameter,
          "oracle: spec must use the relativistic dispersion phi_m");
  require(spec.dispersion.m == input.m, ErrorKind::invalid_parameter,
          "oracle: spec mass differs from the mode mass");
}

// f(r omega) at one point of the sphere (d = 3) or circle (d = 2).
CVector field_value(const ModeInput& in, double r, const CVector& g, double theta, double phi) {
  if (in.d == 2) return harmonics::matrix_harmonic_2d(in.k, theta) * g / std::sqrt(r);
  return harmonics::matrix_harmonic_3d(in.k, in.n, theta, phi) * g / r;
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void validate(const ModeInput& in) {
  require(in.d == 2 || in.d == 3, ErrorKind::unsupported_dimension, "mode input: d must be 2 or 3");
  if (in.d == 3) {
    require(in.k >= 0, ErrorKind::invalid_parameter, "mode input: k must be >= 0 for d = 3");
    require(in.n >= -in.k - 1 && in.n <= in.k, ErrorKind::invalid_parameter,
            "mode input: n must lie in [-k-1, k]");
  }
  require(in.r0 > 0.0 && in.r0 < in.r1, ErrorKind::invalid_parameter, "mode input: need 0 < r0 < r1");
  require(in.m >= 0.0, ErrorKind::invalid_parameter, "mode input: mass must be >= 0");
  require(static_cast<bool>(in.profile), ErrorKind::invalid_parameter, "mode input: missing profile");
}

void TruncationBox::validate() const {
  require(X > 0 && T > 0 && T_limit >= T && n_r > 0 && n_x > 0 && dt > 0 && tail_budget > 0,
          ErrorKind::invalid_parameter, "truncation box: sizes and resolutions must be positive");
}

ModeInput gaussian_bump_mode(int d, int k, int n, double m, double center, double width,
                             const CVector& spinor) {
  require(width > 0.0 && center > 0.0, ErrorKind::invalid_parameter,
          "gaussian bump: center and width must be positive");
  require(spinor.size() == spinor_size(d), ErrorKind::invalid_parameter,
          "gaussian bump: spinor has the wrong number of components");
  ModeInput in;
  in.d = d;
  in.k = k;
  in.n = n;
  in.m = m;
  in.r0 = std::max(center - 6.0 * width, 1e-3);
  in.r1 = center + 6.0 * width;
  const CVector c = spinor;
  const double r0 = in.r0, r1 = in.r1;
  in.profile = [=](double r) -> CVector {
    if (r < r0 || r > r1) return CVector::Zero(c.size());
    const double z = (r - center) / width;
    return std::exp(-0.5 * z * z) * c;
  };
  validate(in);
  return in;
}

double mode_norm_squared(const ModeInput& in, int nodes) {
  validate(in);
  return quadrature::integrate_legendre([&](double r) { return in.profile(r).squaredNorm(); }, in.r0,
                                        in.r1, nodes);
}

double funk_hecke_residual(const std::function<double(double)>& F, int k, int n, double theta,
                           double phi, int sphere_nodes) {
  require(std::abs(n) <= k, ErrorKind::invalid_parameter, "funk_hecke_residual: need |n| <= k");
  const quadrature::SphereRule rule = quadrature::sphere_rule(sphere_nodes, 2 * sphere_nodes);
  const double wx = std::sin(theta) * std::cos(phi), wy = std::sin(theta) * std::sin(phi),
               wz = std::cos(theta);
  Complex lhs = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double st = std::sin(rule.theta[q]);
    const double t = st * std::cos(rule.phi[q]) * wx + st * std::sin(rule.phi[q]) * wy +
                     std::cos(rule.theta[q]) * wz;
    lhs += rule.weight[q] * F(std::clamp(t, -1.0, 1.0)) *
           specialfn::spherical_harmonic(k, n, rule.theta[q], rule.phi[q]);
  }
  const Estimate mu = mu_k(F, 3, k);
  return std::abs(lhs - mu.value * specialfn::spherical_harmonic(k, n, theta, phi));
}

double norm_spectral(const ModeInput& in, const ProblemSpec& spec, int nodes) {
  validate(in);
  check_spec(in, spec);
  const LambdaEvaluator ev(spec);
  const auto [ka, kb] = block_degrees(in);
  const quadrature::Rule& rule = quadrature::gauss_legendre(nodes);
  const double half = 0.5 * (in.r1 - in.r0), mid = 0.5 * (in.r1 + in.r0);
  std::vector<double> terms(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    const double r = mid + half * rule.nodes[i];
    const CVector g = in.profile(r);
    const auto lam = ev.lambda(r, std::max(ka, kb));
    const double phi = std::sqrt(r * r + in.m * in.m);
    const CVector qg = dirac::coefficient_symbol(in.d, in.m, r) * g / phi;
    const CVector gp = 0.5 * (g + qg), gm = 0.5 * (g - qg);
    const int blk = in.d == 2 ? 1 : 2;
    double sum = 0.0;
    for (int c = 0; c < g.size(); ++c) {
      const double l = c < blk ? lam[ka] : lam[kb];
      sum += l * (std::norm(gp[c]) + std::norm(gm[c]));
    }
    terms[i] = rule.weights[i] * sum;
  });
  double total = 0.0;
  for (double t : terms) total += t;
  return 2.0 * kPi * half * total;
}

DirectResult norm_direct(const ModeInput& in, const ProblemSpec& spec, const TruncationBox& box) {
  validate(in);
  check_spec(in, spec);
  box.validate();
  const int d = in.d;
  const int N = spinor_size(d);
  const double m = in.m;
  const dirac::GammaSet gs = dirac::gamma_set(d);

  // Radial nodes over the support.
  const quadrature::Rule& rr = quadrature::gauss_legendre(box.n_r);
  const double rh = 0.5 * (in.r1 - in.r0), rm = 0.5 * (in.r1 + in.r0);
  const int nr = box.n_r;
  std::vector<double> r(nr), wr(nr), phim(nr);
  for (int j = 0; j < nr; ++j) {
    r[j] = rm + rh * rr.nodes[j];
    wr[j] = rh * rr.weights[j];
    phim[j] = std::sqrt(r[j] * r[j] + m * m);
  }

  // Angular channels: (l, mm) scalar harmonics for d = 3, Fourier index j for d = 2.
  const int top = (d == 2 ? std::max(std::abs(in.k), std::abs(in.k + 1)) : in.k + 1) + 1;
  struct Channel {
    int l, mm;
  };
  std::vector<Channel> channels;
  if (d == 3) {
    for (int l = 0; l <= top; ++l)
      for (int mm = -l; mm <= l; ++mm) channels.push_back({l, mm});
  } else {
    for (int j = -top; j <= top; ++j) channels.push_back({j, 0});
  }
  const int nc = static_cast<int>(channels.size());

  // Angular nodes, exact for the band limit involved.
  std::vector<double> ath, aph, aw;
  if (d == 3) {
    const quadrature::SphereRule sr = quadrature::sphere_rule(top + 3, 2 * top + 6);
    ath = sr.theta;
    aph = sr.phi;
    aw = sr.weight;
  } else {
    const int nt = 4 * top + 8;
    for (int q = 0; q < nt; ++q) {
      ath.push_back(2.0 * kPi * q / nt);
      aph.push_back(0.0);
      aw.push_back(2.0 * kPi / nt);
    }
  }
  const int na = static_cast<int>(ath.size());
  // basis[q][c] multiplies h(omega_q) in the projection.
  std::vector<std::vector<Complex>> basis(na, std::vector<Complex>(nc));
  for (int q = 0; q < na; ++q)
    for (int c = 0; c < nc; ++c)
      basis[q][c] = d == 3 ? std::conj(specialfn::spherical_harmonic(channels[c].l, channels[c].mm,
                                                                     ath[q], aph[q]))
                           : std::exp(kI * double(channels[c].l) * ath[q]);

  // a = psi f, b = psi A_xi f / phi projected per (component, channel).
  const int ncomp = N * nc;
  std::vector<Complex> A(static_cast<std::size_t>(nr) * ncomp), B(A.size());
  parallel_for(nr, [&](std::size_t j) {
    const CVector g = in.profile(r[j]);
    const double psi = spec.smoothing(r[j]);
    for (int q = 0; q < na; ++q) {
      const double st = std::sin(ath[q]);
      std::vector<double> xi =
          d == 3 ? std::vector<double>{r[j] * st * std::cos(aph[q]), r[j] * st * std::sin(aph[q]),
                                       r[j] * std::cos(ath[q])}
                 : std::vector<double>{r[j] * std::cos(ath[q]), r[j] * std::sin(ath[q])};
      const CVector f = field_value(in, r[j], g, ath[q], aph[q]);
      const CVector af = dirac::symbol(gs, xi, m) * f;
      for (int s = 0; s < N; ++s)
        for (int c = 0; c < nc; ++c) {
          const Complex wb = aw[q] * basis[q][c];
          A[j * ncomp + s * nc + c] += psi * wb * f[s];
          B[j * ncomp + s * nc + c] += psi / phim[j] * wb * af[s];
        }
    }
  });

  // Outer radial nodes and the plane-wave kernels.
  const quadrature::Rule& xr = quadrature::gauss_legendre(box.n_x);
  const int nx = box.n_x;
  std::vector<double> rho(nx), wx(nx);
  for (int p = 0; p < nx; ++p) {
    rho[p] = 0.5 * box.X * (1.0 + xr.nodes[p]);
    wx[p] = 0.5 * box.X * xr.weights[p] * std::pow(rho[p], d - 1) * weight_profile(spec.weight, rho[p]);
  }
  std::vector<double> K(static_cast<std::size_t>(nx) * nc * nr);
  for (int p = 0; p < nx; ++p)
    for (int c = 0; c < nc; ++c)
      for (int j = 0; j < nr; ++j) {
        double kern;
        if (d == 3) {
          kern = 4.0 * kPi * wr[j] * r[j] * r[j] *
                 std::sph_bessel(static_cast<unsigned>(channels[c].l), rho[p] * r[j]);
        } else {
          const int jj = channels[c].l;
          const double jv = std::cyl_bessel_j(static_cast<double>(std::abs(jj)), rho[p] * r[j]);
          const double sgn = (jj < 0 && (std::abs(jj) % 2)) ? -1.0 : 1.0;
          kern = std::sqrt(2.0 * kPi) * wr[j] * r[j] * sgn * jv;
        }
        K[(static_cast<std::size_t>(p) * nc + c) * nr + j] = kern;
      }

  const double phi_max = *std::max_element(phim.begin(), phim.end());
  const double h = std::min(box.dt, kPi / (4.0 * phi_max));

  // Spatial integral at time t, with the |x| in [X/2, X] share.
  auto slice = [&](double t, double& outer) {
    std::vector<Complex> u(static_cast<std::size_t>(nr) * ncomp);
    for (int j = 0; j < nr; ++j) {
      const double c = std::cos(t * phim[j]), s = std::sin(t * phim[j]);
      for (int i = 0; i < ncomp; ++i) u[j * ncomp + i] = c * A[j * ncomp + i] - kI * s * B[j * ncomp + i];
    }
    double total = 0.0;
    outer = 0.0;
    for (int p = 0; p < nx; ++p) {
      double acc = 0.0;
      for (int s = 0; s < N; ++s)
        for (int c = 0; c < nc; ++c) {
          const double* kr = &K[(static_cast<std::size_t>(p) * nc + c) * nr];
          Complex v = 0.0;
          for (int j = 0; j < nr; ++j) v += kr[j] * u[j * ncomp + s * nc + c];
          acc += std::norm(v);
        }
      total += wx[p] * acc;
      if (rho[p] > 0.5 * box.X) outer += wx[p] * acc;
    }
    return total;
  };

  // Samples at t = i h for |i| <= M, grown as T doubles.
  std::vector<double> pos, neg, pos_out, neg_out;
  auto extend = [&](int M) {
    const int old = static_cast<int>(pos.size());
    if (M + 1 <= old) return;
    pos.resize(M + 1);
    neg.resize(M + 1);
    pos_out.resize(M + 1);
    neg_out.resize(M + 1);
    parallel_for(static_cast<std::size_t>(2 * (M + 1 - old)), [&](std::size_t idx) {
      const int i = old + static_cast<int>(idx / 2);
      if (idx % 2 == 0)
        pos[i] = slice(i * h, pos_out[i]);
      else
        neg[i] = slice(-i * h, neg_out[i]);
    });
  };
  auto integral = [&](int M, const std::vector<double>& p, const std::vector<double>& q) {
    double sum = p[0];
    for (int i = 1; i < M; ++i) sum += p[i] + q[i];
    return h * (sum + 0.5 * (p[M] + q[M]));
  };

  DirectResult out;
  double T = box.T;
  for (;;) {
    const int M = 8 * static_cast<int>(std::ceil(T / (8.0 * h)));
    extend(M);
    const double V = integral(M, pos, neg);
    const double Vh = integral(M / 2, pos, neg);
    out.trace.clear();
    for (int Mj = M; Mj >= 1 && out.trace.size() < 4; Mj /= 2)
      out.trace.push_back({Mj * h, integral(Mj, pos, neg)});
    out.value = V;
    out.tail_fraction = V > 0.0 ? (V - Vh) / V : 0.0;
    out.x_tail_fraction = V > 0.0 ? integral(M, pos_out, neg_out) / V : 0.0;
    if (std::abs(out.tail_fraction) < box.tail_budget) break;
    if (2.0 * T > box.T_limit)
      throw Error(ErrorKind::truncation_not_converged,
                  "norm_direct: time tail fraction " + fmt17(out.tail_fraction) + " at T = " +
                      fmt17(M * h) + " exceeds the budget");
    T *= 2.0;
  }
  if (out.x_tail_fraction > box.tail_budget)
    throw Error(ErrorKind::truncation_not_converged,
                "norm_direct: share of |x| in [X/2, X] is " + fmt17(out.x_tail_fraction) +
                    "; enlarge X");
  return out;
}

InequalitySample inequality_sample(const std::vector<ModeInput>& modes, const ProblemSpec& spec,
                                   double dirac_constant, double rtol) {
  require(!modes.empty(), ErrorKind::invalid_parameter, "inequality_sample: no modes");
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      require(modes[i].k != modes[j].k || modes[i].n != modes[j].n, ErrorKind::invalid_parameter,
              "inequality_sample: modes must carry distinct indices");
  double num = 0.0, den = 0.0;
  for (const auto& mode : modes) {
    num += norm_spectral(mode, spec);
    den += mode_norm_squared(mode);
  }
  InequalitySample s;
  s.ratio = den > 0.0 ? num / den : 0.0;
  s.bound = 2.0 * kPi * std::pow(2.0 * kPi, spec.d - 1) * dirac_constant;
  s.within = s.ratio <= s.bound * (1.0 + rtol);
  return s;
}

Scenario read_scenario(std::istream& is, const std::string& source) {
  KeyValueReader rd(parse_key_values(is, source), source);
  rd.reject_unknown({"name", "d", "k", "n", "m", "family", "s", "profile", "center", "width", "spinor", "X",
                     "T", "T_limit", "n_r", "n_x", "dt", "tail_budget", "budget"});
  Scenario sc;
  sc.name = rd.get_string("name", source);
  rd.require_string("d");
  const int d = rd.get_int("d", 3);
  if (d != 2 && d != 3) rd.fail("d", "scenario: d must be 2 or 3");
  const int k = rd.get_int("k", 0);
  const int n = rd.get_int("n", 0);
  const double m = rd.get_double("m", 0.0);
  if (m < 0.0) rd.fail("m", "scenario: m must be >= 0");
  const std::string profile = rd.get_string("profile", "gaussian_bump");
  if (profile != "gaussian_bump") rd.fail("profile", "scenario: unknown profile '" + profile + "'");
  const double center = rd.get_double("center", 2.0);
  const double width = rd.get_double("width", 0.3);

  std::istringstream sp(rd.require_string("spinor"));
  sp.imbue(std::locale::classic());
  std::vector<double> comps;
  for (double x; sp >> x;) comps.push_back(x);
  if (!sp.eof() || static_cast<int>(comps.size()) != spinor_size(d))
    rd.fail("spinor", "scenario: spinor needs " + std::to_string(spinor_size(d)) + " real entries");
  CVector spinor(spinor_size(d));
  for (int i = 0; i < spinor.size(); ++i) spinor[i] = comps[i];

  const std::string family = rd.get_string("family", "gaussian");
  WeightSpec weight;
  if (family == "gaussian") {
    weight = WeightSpec::gaussian();
  } else if (family == "A") {
    rd.require_string("s");
    weight = WeightSpec::type_a(rd.get_double("s", 2.0));
  } else {
    rd.fail("family", "scenario: family must be gaussian or A");
  }

  try {
    sc.input = gaussian_bump_mode(d, k, n, m, center, width, spinor);
    sc.spec = make_problem(d, weight, "dirac", m);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse_error, source + ": " + e.what());
  }
  sc.box.X = rd.get_double("X", sc.box.X);
  sc.box.T = rd.get_double("T", d == 2 ? 40.0 : sc.box.T);
  sc.box.T_limit = rd.get_double("T_limit", sc.box.T_limit);
  sc.box.n_r = rd.get_int("n_r", sc.box.n_r);
  sc.box.n_x = rd.get_int("n_x", sc.box.n_x);
  sc.box.dt = rd.get_double("dt", sc.box.dt);
  sc.box.tail_budget = rd.get_double("tail_budget", sc.box.tail_budget);
  sc.budget = rd.get_double("budget", sc.budget);
  try {
    sc.box.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::parse_error, source + ": " + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::parse_error, "cannot open scenario '" + path + "'");
  return read_scenario(in, path);
}

ScenarioResult run_scenario(const Scenario& sc) {
  ScenarioResult res;
  res.name = sc.name;
  res.spectral = norm_spectral(sc.input, sc.spec);
  res.detail = norm_direct(sc.input, sc.spec, sc.box);
  res.direct = res.detail.value;
  res.rel_diff = res.spectral != 0.0 ? std::abs(res.direct - res.spectral) / std::abs(res.spectral)
                                     : std::abs(res.direct);
  res.budget = sc.budget;
  return res;
}

void write_result_csv_header(std::ostream& out) { out << "scenario,spectral,direct,rel_diff,budget\n"; }

void write_result_csv_row(std::ostream& out, const ScenarioResult& r) {
  out << r.name << ',' << fmt17(r.spectral) << ',' << fmt17(r.direct) << ',' << fmt17(r.rel_diff) << ','
      << fmt17(r.budget) << '\n';
}

}  // namespace kysharp::oracle
