#include "kysharp/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "kysharp/diracalg.hpp"
#include "kysharp/error.hpp"
#include "kysharp/harmonics.hpp"
#include "kysharp/lambda.hpp"
#include "kysharp/optimum.hpp"
#include "kysharp/oracle.hpp"
#include "kysharp/quadrature.hpp"
#include "kysharp/specialfn.hpp"

namespace kysharp::verify {

namespace {

using dirac::CMatrix;
using dirac::Complex;
using dirac::CVector;
constexpr double kPi = std::numbers::pi;

class Collector {
 public:
  explicit Collector(std::string suite) : suite_(std::move(suite)) {}

  void add(const std::string& name, double residual, double tolerance) {
    out_.push_back({suite_, name, residual, tolerance, std::isfinite(residual) && residual <= tolerance});
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Falling factorial a (a-1) ... (a-j+1).
double falling(double a, int j) {
  double p = 1.0;
  for (int i = 0; i < j; ++i) p *= a - i;
  return p;
}

// p_{d,k}(t) from the Rodrigues formula, with the k-th derivative of
// (1-t)^a (1+t)^a expanded by the Leibniz rule.
double legendre_rodrigues(int d, int k, double t) {
  const double a = k + (d - 3) / 2.0;
  double deriv = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    deriv += binom * ((j % 2) ? -1.0 : 1.0) * falling(a, j) * std::pow(1.0 - t, a - j) * falling(a, k - j) *
             std::pow(1.0 + t, a - k + j);
    binom = binom * (k - j) / (j + 1);
  }
  const double rk = std::exp(std::lgamma((d - 1) / 2.0) - std::lgamma(k + (d - 1) / 2.0)) / std::pow(2.0, k);
  return ((k % 2) ? -1.0 : 1.0) * rk * std::pow(1.0 - t * t, (3.0 - d) / 2.0) * deriv;
}

CMatrix random_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  return Eigen::MatrixXcd(qr.householderQ());
}

Eigen::VectorXd hermitian_spectrum(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"specialfn", "harmonics", "algebra", "funk-hecke", "equivalence"};
  return names;
}

std::vector<CheckResult> specialfn_checks(std::uint64_t seed) {
  Collector c("specialfn");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  double rod = 0.0, one = 0.0;
  for (int d = 2; d <= 6; ++d)
    for (int k = 0; k <= 20; ++k) {
      one = std::max(one, std::abs(specialfn::legendre_d(d, k, 1.0) - 1.0));
      for (int i = 1; i < 200; ++i) {
        const double t = -1.0 + i / 100.0;
        rod = std::max(rod, std::abs(specialfn::legendre_d(d, k, t) - legendre_rodrigues(d, k, t)));
      }
    }
  c.add("legendre_d vs Rodrigues, d=2..6, k<=20", rod, 1e-8);
  c.add("legendre_d(1) = 1", one, 1e-12);

  double rec = 0.0, g1 = 0.0, g2 = 0.0, g3 = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double p = 0.1 + 5.0 * U(rng);
    const int n = 1 + static_cast<int>(25 * U(rng));
    const double x = -1.0 + 2.0 * U(rng);
    auto C = [](double pp, int nn, double xx) { return nn < 0 ? 0.0 : specialfn::gegenbauer(pp, nn, xx); };
    auto rel = [](double lhs, double rhs, double scale) { return std::abs(lhs - rhs) / std::max(1.0, scale); };
    {
      const double t1 = (n + 1) * C(p, n + 1, x), t2 = 2 * (n + p) * x * C(p, n, x), t3 = (n + 2 * p - 1) * C(p, n - 1, x);
      rec = std::max(rec, rel(t1 + t3, t2, std::max({std::abs(t1), std::abs(t2), std::abs(t3)})));
      g3 = std::max(g3, rel(t2, t1 + t3, std::max({std::abs(t1), std::abs(t2), std::abs(t3)})));
    }
    {
      const double lhs = (n + p) * C(p, n, x);
      const double a = p * C(p + 1, n, x), b = p * C(p + 1, n - 2, x);
      g1 = std::max(g1, rel(lhs, a - b, std::max({std::abs(lhs), std::abs(a), std::abs(b)})));
    }
    {
      const double lhs = 4 * p * (n + p) * (1 - x * x) * C(p + 1, n - 1, x);
      const double a = (n + 2 * p - 1) * (n + 2 * p) * C(p, n - 1, x), b = n * (n + 1.0) * C(p, n + 1, x);
      g2 = std::max(g2, rel(lhs, a - b, std::max({std::abs(lhs), std::abs(a), std::abs(b)})));
    }
  }
  c.add("Gegenbauer recurrence", rec, 1e-12);
  c.add("Gegenbauer identity (n+p)C = p(C^{p+1}_n - C^{p+1}_{n-2})", g1, 1e-10);
  c.add("Gegenbauer identity 4p(n+p)(1-x^2)C^{p+1}_{n-1}", g2, 1e-10);
  c.add("Gegenbauer identity 2(n+p)xC_n", g3, 1e-10);

  double orth = 0.0;
  for (int d = 2; d <= 6; ++d) {
    const auto& rule = quadrature::gauss_jacobi(24, (d - 3) / 2.0, (d - 3) / 2.0);
    for (int k = 0; k <= 10; ++k)
      for (int j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
          s += rule.weights[i] * specialfn::legendre_d(d, k, rule.nodes[i]) * specialfn::legendre_d(d, j, rule.nodes[i]);
        orth = std::max(orth, std::abs(s));
      }
  }
  c.add("p_{d,k} orthogonality, k != j <= 10", orth, 1e-10);

  const double y10 = std::abs(specialfn::spherical_harmonic(1, 0, 0.0, 0.0) - std::sqrt(3.0 / (4.0 * kPi)));
  c.add("Y_1^0 at the pole", y10, 1e-14);

  double yorth = 0.0;
  const auto sr = quadrature::sphere_rule(12, 24);
  for (int k = 0; k <= 5; ++k)
    for (int n = -k; n <= k; ++n)
      for (int k2 = 0; k2 <= 5; ++k2)
        for (int n2 = -k2; n2 <= k2; ++n2) {
          Complex s = 0.0;
          for (std::size_t q = 0; q < sr.size(); ++q)
            s += sr.weight[q] * std::conj(specialfn::spherical_harmonic(k, n, sr.theta[q], sr.phi[q])) *
                 specialfn::spherical_harmonic(k2, n2, sr.theta[q], sr.phi[q]);
          yorth = std::max(yorth, std::abs(s - ((k == k2 && n == n2) ? 1.0 : 0.0)));
        }
  c.add("Y_k^n orthonormality, k <= 5", yorth, 1e-12);
  return c.take();
}

std::vector<CheckResult> harmonics_checks(std::uint64_t seed) {
  using namespace harmonics;
  Collector c("harmonics");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  double l2 = 0, l3 = 0, l4 = 0, c42 = 0;
  for (int k = 0; k <= 30; ++k)
    for (int n = -k - 1; n <= k; ++n) {
      const RMatrix2 A = coupling_matrix(k, n);
      l2 = std::max(l2, (coupling_matrix(k + 1, n) * A).cwiseAbs().maxCoeff());
      const RMatrix2 B = coupling_matrix_or_zero(k - 1, n);
      // Only the components carried by Y_k^n and Y_k^{n+1} take part at n = k and n = -k-1.
      RMatrix2 P = RMatrix2::Identity();
      if (n == k) P(1, 1) = 0.0;
      if (n == -k - 1) P(0, 0) = 0.0;
      l3 = std::max(l3, (P * (A.transpose() * A + B * B.transpose() - RMatrix2::Identity()) * P).cwiseAbs().maxCoeff());
      l4 = std::max(l4, std::abs(A.determinant()));
      const CouplingTriple& t = coupling_triple(k, n);
      const CouplingTriple& t1 = coupling_triple(k + 1, n);
      const Eigen::Matrix2cd Ac = A.cast<Complex>(), Bc = B.cast<Complex>();
      double e = (Ac * t.u).norm();
      e = std::max(e, (Bc.transpose() * t.v).norm());
      e = std::max(e, (Ac * t.v - t1.u).norm());
      e = std::max(e, std::abs(t.u.dot(t.v)));
      e = std::max({e, std::abs(t.u.norm() - 1.0), std::abs(t.v.norm() - 1.0)});
      c42 = std::max(c42, e);
    }
  c.add("A_{k+1}^n A_k^n = 0, k <= 30", l2, 1e-12);
  c.add("A^T A + A_{k-1} A_{k-1}^T = I on active components, k <= 30", l3, 1e-12);
  c.add("det A_k^n = 0, k <= 30", l4, 1e-12);
  c.add("kernel vectors u, v relations, k <= 30", c42, 1e-12);

  double l1 = 0, inter3 = 0, beta3 = 0, inter2 = 0, beta2 = 0;
  const auto gs3 = dirac::gamma_set(3);
  const auto gs2 = dirac::gamma_set(2);
  const CMatrix s1i = dirac::kron(dirac::pauli(1), dirac::pauli(0));
  const CMatrix s33 = dirac::kron(dirac::pauli(3), dirac::pauli(3));
  for (int it = 0; it < 100; ++it) {
    const double th = kPi * U(rng), ph = 2.0 * kPi * U(rng);
    const double st = std::sin(th);
    const CMatrix aw3 = gs3.alphas[0] * st * std::cos(ph) + gs3.alphas[1] * st * std::sin(ph) + gs3.alphas[2] * std::cos(th);
    for (int k = 0; k <= 10; ++k) {
      for (int n = -k - 1; n <= k; ++n) {
        CMatrix rhs = y_block(k + 1, n, th, ph) * coupling_matrix(k, n).cast<Complex>();
        if (coupling_in_range(k - 1, n))
          rhs += y_block(k - 1, n, th, ph) * coupling_matrix(k - 1, n).transpose().cast<Complex>();
        l1 = std::max(l1, max_abs(sigma_dot(th, ph) * y_block(k, n, th, ph) - rhs));
        const CMatrix E = matrix_harmonic_3d(k, n, th, ph);
        inter3 = std::max(inter3, max_abs(aw3 * E - E * s1i));
        beta3 = std::max(beta3, max_abs(gs3.beta * E - E * s33));
      }
      for (int kk : {k, -k - 1}) {
        const CMatrix E = matrix_harmonic_2d(kk, ph);
        const CMatrix aw2 = gs2.alphas[0] * std::cos(ph) + gs2.alphas[1] * std::sin(ph);
        inter2 = std::max(inter2, max_abs(aw2 * E - E * dirac::pauli(1)));
        beta2 = std::max(beta2, max_abs(gs2.beta * E - E * dirac::pauli(3)));
      }
    }
  }
  c.add("(sigma.omega) Y-block expansion, 100 angles, k <= 10", l1, 1e-10);
  c.add("alpha.omega E_k^n = E_k^n (sigma_1 x I), d=3", inter3, 1e-10);
  c.add("beta E_k^n = E_k^n (sigma_3 x sigma_3), d=3", beta3, 1e-10);
  c.add("alpha.omega E_k = E_k sigma_1, d=2", inter2, 1e-10);
  c.add("beta E_k = E_k sigma_3, d=2", beta2, 1e-10);

  double orth = 0;
  const auto sp = quadrature::sphere_rule(12, 24);
  std::vector<std::pair<int, int>> idx;
  for (int k = 0; k <= 4; ++k)
    for (int n = -k - 1; n <= k; ++n) idx.push_back({k, n});
  std::vector<std::vector<CMatrix>> Es(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t q = 0; q < sp.size(); ++q) Es[a].push_back(matrix_harmonic_3d(idx[a].first, idx[a].second, sp.theta[q], sp.phi[q]));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      CMatrix G = CMatrix::Zero(4, 4);
      for (std::size_t q = 0; q < sp.size(); ++q) G += sp.weight[q] * (Es[a][q].adjoint() * Es[b][q]);
      if (a == b) G -= CMatrix::Identity(4, 4);
      orth = std::max(orth, max_abs(G));
    }
  c.add("E_k^n orthonormal columns, k <= 4", orth, 1e-12);

  // Band-limited random field: each component a combination of Y_l^m, l <= 4,
  // with radial factors.
  const int L = 4;
  std::normal_distribution<double> g;
  std::vector<std::array<Complex, 4>> coef;
  std::vector<std::pair<int, int>> lm;
  for (int l = 0; l <= L; ++l)
    for (int mm = -l; mm <= l; ++mm) {
      lm.push_back({l, mm});
      std::array<Complex, 4> a;
      for (auto& z : a) z = Complex(g(rng), g(rng));
      coef.push_back(a);
    }
  const harmonics::Field3d field = [&](const std::array<double, 3>& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double th = std::acos(std::clamp(x[2] / r, -1.0, 1.0)), ph = std::atan2(x[1], x[0]);
    CVector v = CVector::Zero(4);
    for (std::size_t i = 0; i < lm.size(); ++i) {
      const Complex y = specialfn::spherical_harmonic(lm[i].first, lm[i].second, th, ph);
      for (int s = 0; s < 4; ++s) v[s] += coef[i][s] * y * std::exp(-(s + 1) * r * 0.3) * (1.0 + lm[i].first * r);
    }
    return v;
  };
  const std::vector<double> rg{0.3, 0.9, 1.7, 2.6};
  const auto dec = decompose_3d(field, L, rg);
  double parseval = 0, roundtrip = 0;
  const auto fine = quadrature::sphere_rule(20, 40);
  for (std::size_t i = 0; i < rg.size(); ++i) {
    double direct = 0.0;
    for (std::size_t q = 0; q < fine.size(); ++q) {
      const double st = std::sin(fine.theta[q]);
      direct += fine.weight[q] * field({rg[i] * st * std::cos(fine.phi[q]), rg[i] * st * std::sin(fine.phi[q]), rg[i] * std::cos(fine.theta[q])}).squaredNorm();
    }
    direct *= rg[i] * rg[i];
    double modes = 0.0;
    for (const auto& mc : dec) modes += mc.values[i].squaredNorm();
    parseval = std::max(parseval, std::abs(direct - modes) / direct);
    for (int it = 0; it < 20; ++it) {
      const double th = kPi * U(rng), ph = 2.0 * kPi * U(rng);
      const double st = std::sin(th);
      const CVector f = field({rg[i] * st * std::cos(ph), rg[i] * st * std::sin(ph), rg[i] * std::cos(th)});
      roundtrip = std::max(roundtrip, (synthesize_3d(dec, rg, i, th, ph) - f).norm() / std::max(1.0, f.norm()));
    }
  }
  c.add("Parseval, band-limited field k <= 4", parseval, 1e-8);
  c.add("synthesize(decompose(f)) = f", roundtrip, 1e-8);
  return c.take();
}

std::vector<CheckResult> algebra_checks(std::uint64_t seed) {
  Collector c("algebra");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  for (int d : {2, 3}) {
    const auto gs = dirac::gamma_set(d);
    std::vector<CMatrix> all = gs.alphas;
    all.push_back(gs.beta);
    const int n = gs.size();
    double res = 0.0, herm = 0.0;
    for (std::size_t a = 0; a < all.size(); ++a) {
      herm = std::max(herm, max_abs(all[a] - all[a].adjoint()));
      for (std::size_t b = 0; b < all.size(); ++b) {
        CMatrix ac = all[a] * all[b] + all[b] * all[a];
        if (a == b) ac -= 2.0 * CMatrix::Identity(n, n);
        res = std::max(res, max_abs(ac));
      }
    }
    const std::string tag = ", d=" + std::to_string(d);
    c.add("anticommutation" + tag, res, 1e-14);
    c.add("hermiticity" + tag, herm, 1e-14);

    double eig = 0.0, vec = 0.0, group = 0.0, idem = 0.0, gauge = 0.0, form = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const double m = 3.0 * U(rng), r = 1e-3 + 5.0 * U(rng);
      const double lk = 10.0 * U(rng), lk1 = 10.0 * U(rng);
      const CMatrix Lam = dirac::dirac_Lambda_matrix(d, lk, lk1, m, r);
      const double formula = dirac_combination(lk, lk1, m, r);
      eig = std::max(eig, std::abs(hermitian_spectrum(Lam).maxCoeff() - formula) / formula);
      const auto es = dirac::extremiser_space(d, lk, lk1, m, r);
      for (const CVector& v : es.max_eigenspace_basis)
        vec = std::max(vec, (Lam * v - es.max_eigenvalue * v).norm() / (formula * v.norm()));

      // Quadratic form through the +-phi_m split of the coefficient symbol.
      CVector gvec(n);
      for (int i = 0; i < n; ++i) gvec[i] = Complex(U(rng) - 0.5, U(rng) - 0.5);
      const double phi = std::sqrt(r * r + m * m);
      const CVector qg = dirac::coefficient_symbol(d, m, r) * gvec / phi;
      const CVector gp = 0.5 * (gvec + qg), gm = 0.5 * (gvec - qg);
      double split = 0.0;
      for (int i = 0; i < n; ++i) {
        const double l = i < n / 2 ? lk : lk1;
        split += l * (std::norm(gp[i]) + std::norm(gm[i]));
      }
      const double quad = gvec.dot(Lam * gvec).real();
      form = std::max(form, std::abs(split - quad) / std::max(1.0, std::abs(quad)));

      std::vector<double> xi(d);
      for (auto& x : xi) x = 4.0 * U(rng) - 2.0;
      const double t = 4.0 * U(rng) - 2.0, s = 4.0 * U(rng) - 2.0;
      group = std::max(group, max_abs(dirac::propagator(gs, xi, m, t) * dirac::propagator(gs, xi, m, s) -
                                      dirac::propagator(gs, xi, m, t + s)));
      const auto pr = dirac::pm_projection(gs, gvec, xi, m + 0.1);
      const auto pr2 = dirac::pm_projection(gs, pr.plus, xi, m + 0.1);
      idem = std::max(idem, (pr2.plus - pr.plus).norm() + pr2.minus.norm());

      if (it < 100) {
        const CMatrix Uu = random_unitary(rng, n);
        CMatrix a1 = m * gs.beta, a2 = m * Uu.adjoint() * gs.beta * Uu;
        for (int j = 0; j < d; ++j) {
          a1 += xi[j] * gs.alphas[j];
          a2 += xi[j] * Uu.adjoint() * gs.alphas[j] * Uu;
        }
        gauge = std::max(gauge, (hermitian_spectrum(a1) - hermitian_spectrum(a2)).cwiseAbs().maxCoeff());
      }
    }
    c.add("max eigenvalue of Lambda-tilde = lambda-tilde formula" + tag, eig, 1e-12);
    c.add("extremiser_space vectors are eigenvectors" + tag, vec, 1e-12);
    c.add("+- split quadratic form = <Lambda-tilde g, g>" + tag, form, 1e-12);
    c.add("propagator group law" + tag, group, 1e-12);
    c.add("+- projector idempotence" + tag, idem, 1e-14);
    c.add("symbol spectrum invariant under unitary change of gammas" + tag, gauge, 1e-12);
  }
  return c.take();
}

std::vector<CheckResult> funk_hecke_checks(std::uint64_t seed) {
  Collector c("funk-hecke");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  c.add("F = 1, k = 0", oracle::funk_hecke_residual([](double) { return 1.0; }, 0, 0, 0.4, 1.1), 1e-10);
  double smooth = 0.0;
  for (int it = 0; it < 20; ++it) {
    const double th = kPi * U(rng), ph = 2.0 * kPi * U(rng);
    for (int k = 0; k <= 6; ++k)
      for (int n = -k; n <= k; ++n)
        smooth = std::max(smooth, oracle::funk_hecke_residual([](double t) { return std::exp(-(1.0 - t)); }, k, n, th, ph));
  }
  c.add("F = exp(-(1-t)), k <= 6, 20 random directions", smooth, 1e-8);
  double cubic = 0.0;
  for (int n = -5; n <= 5; ++n)
    cubic = std::max(cubic, oracle::funk_hecke_residual([](double t) { return t * t * t; }, 5, n, 0.9, 2.3));
  c.add("F = t^3, k = 5 (degree below k)", cubic, 1e-10);
  return c.take();
}

std::vector<CheckResult> equivalence_checks() {
  Collector c("equivalence");
  SearchPolicy numeric;
  numeric.prefer_closed_form = false;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };

  struct Case {
    const char* name;
    int d;
    WeightSpec w;
    const char* eq;
    double m;
  };
  const std::vector<Case> cases{
      {"C_3 r^-2 closed vs numeric", 3, WeightSpec::type_b(2), "schrodinger", 0},
      {"C_3 (1+r^2)^-1 psi=r^1/2 closed vs numeric", 3, WeightSpec::type_c(2), "schrodinger", 0},
      {"C_3 (1+r^2)^-1 psi=(1+r^2)^1/4 closed vs numeric", 3, WeightSpec::type_a(2), "schrodinger", 0},
      {"C-tilde_3 r^-2 m=1 closed vs numeric", 3, WeightSpec::type_b(2), "dirac", 1},
      {"C-tilde_3 r^-2 m=0 closed vs numeric", 3, WeightSpec::type_b(2), "dirac", 0},
      {"C-tilde_2 r^-1.5 m=1 closed vs numeric", 2, WeightSpec::type_b(1.5), "dirac", 1},
      {"C-tilde_2 r^-1.5 m=0 closed vs numeric", 2, WeightSpec::type_b(1.5), "dirac", 0},
      {"C-tilde_3 (1+r^2)^-1 m=1 closed vs numeric", 3, WeightSpec::type_c(2), "dirac", 1},
  };
  for (const Case& k : cases) {
    const ProblemSpec spec = make_problem(k.d, k.w, k.eq, k.m);
    const bool dirac = std::string(k.eq) == "dirac";
    const ConstantReport closed = dirac ? dirac_constant(spec) : schrodinger_constant(spec);
    const ConstantReport num = dirac ? dirac_constant(spec, numeric) : schrodinger_constant(spec, numeric);
    const double tol = std::max(1e-3, 10.0 * num.error_estimate / closed.value);
    c.add(k.name, closed.method == Method::closed_form ? rel(num.value, closed.value) : HUGE_VAL, tol);
  }

  for (int d : {2, 3})
    for (double s : {1.5, 2.0, 2.5})
      for (double m : {0.0, 1.0}) {
        if (s >= d) continue;
        char name[96];
        std::snprintf(name, sizeof name, "Gamma formula = c_k combination, d=%d s=%g m=%g", d, s, m);
        c.add(name, rel(closed_form::type_b_dirac_gamma(d, s, m), closed_form::type_b_dirac_ck(d, s, m)), 1e-12);
      }

  for (int d : {2, 3})
    for (double m : {0.0, 1.0})
      for (bool typeb : {true, false}) {
        const WeightSpec w = typeb ? WeightSpec::type_b(d == 2 ? 1.5 : 2.0) : WeightSpec::type_c(2.0);
        const EquivalenceReport e = equivalence_check(make_problem(d, w, "dirac", m), numeric);
        char name[96];
        std::snprintf(name, sizeof name, "C/2 <= C-tilde <= C = 2 C(reduced), %s d=%d m=%g", typeb ? "r^-s" : "(1+r^2)^-s/2", d, m);
        const double violation = std::max({e.lower - e.dirac, e.dirac - e.upper, std::abs(e.upper - e.reduced_twice), 0.0});
        c.add(name, violation, e.tolerance);
      }
  return c.take();
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "specialfn") return specialfn_checks(seed);
  if (suite == "harmonics") return harmonics_checks(seed);
  if (suite == "algebra") return algebra_checks(seed);
  if (suite == "funk-hecke") return funk_hecke_checks(seed);
  if (suite == "equivalence") return equivalence_checks();
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
      auto part = run_suite(name, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw Error(ErrorKind::invalid_parameter, "unknown verify suite '" + suite + "'");
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

void write_table(std::ostream& out, const std::vector<CheckResult>& results) {
  char buf[256];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%-12s %-66s %10.3e %9.1e  %s\n", r.suite.c_str(), r.name.c_str(), r.residual,
                  r.tolerance, r.pass ? "PASS" : "FAIL");
    out << buf;
  }
}

}  // namespace kysharp::verify
