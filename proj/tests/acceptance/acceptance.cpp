// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "kysharp/error.hpp"
#include "kysharp/lambda.hpp"
#include "kysharp/optimum.hpp"
#include "kysharp/oracle.hpp"
#include "kysharp/verify.hpp"

using namespace kysharp;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

SearchPolicy numeric() {
  SearchPolicy p;
  p.prefer_closed_form = false;
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Largest residual among verify checks whose name contains `key`; -1 when none match.
double worst_residual(const std::vector<verify::CheckResult>& checks, const std::string& key) {
  double worst = -1.0;
  for (const auto& c : checks)
    if (c.name.find(key) != std::string::npos) worst = std::max(worst, c.residual);
  return worst;
}

void residual_check(Verdict& v, const std::vector<verify::CheckResult>& checks, const std::string& key,
                    const std::string& label, double tol) {
  const double r = worst_residual(checks, key);
  v.check(r >= 0.0 && r <= tol, label + fmt(" %.1e (tol %.0e)", r, tol));
}

Verdict closed_form_levels() {
  Verdict v;
  double worst = 0.0;
  for (int d : {2, 3, 4})
    for (double s : {1.5, 2.0, 2.5}) {
      if (s >= d) continue;
      LambdaEvaluator ev(make_problem(d, WeightSpec::type_b(s), "schrodinger", 0.0));
      for (double r : {0.1, 1.0, 10.0}) {
        const auto values = ev.lambda(r, 10);
        for (int k = 0; k <= 10; ++k)
          worst = std::max(worst, rel(values[k] / std::pow(2 * pi, d - 1), 0.5 * closed_form::c_k(d, s, k)));
      }
    }
  v.check(worst <= 1e-8, fmt("max rel err %.1e over d in {2,3,4}, s in {1.5,2,2.5}, k <= 10 (tol 1e-8)", worst));
  return v;
}

Verdict schrodinger_constants() {
  Verdict v;
  const double a = schrodinger_constant(make_problem(3, WeightSpec::type_a(2.0), "schrodinger", 0), numeric()).value;
  v.check(a >= pi - 2e-2 && a <= pi + 1e-6, fmt("C_3(A,2) numeric %.10f in [pi-2e-2, pi+1e-6]", a));
  const ProblemSpec b = make_problem(3, WeightSpec::type_b(2.0), "schrodinger", 0);
  const double bc = schrodinger_constant(b).value;
  const double bn = schrodinger_constant(b, numeric()).value;
  v.check(rel(bc, pi) <= 1e-6, fmt("C_3(B,2) closed %.10f", bc));
  v.check(rel(bn, pi) <= 1e-3, fmt("numeric %.10f", bn));
  const ConstantReport c = schrodinger_constant(make_problem(3, WeightSpec::type_c(2.0), "schrodinger", 0), numeric());
  v.check(rel(c.value, pi / 2) <= 1e-2 && c.location == Location::limit_infinity,
          fmt("C_3(C,2) numeric %.10f vs pi/2, limit r->inf", c.value));
  return v;
}

Verdict dirac_constants() {
  Verdict v;
  for (double m : {1.0, 0.0}) {
    const double expect = m > 0 ? 2 * pi : 4 * pi / 3;
    const double gamma = closed_form::type_b_dirac_gamma(3, 2.0, m);
    const double ck = closed_form::type_b_dirac_ck(3, 2.0, m);
    const double num = dirac_constant(make_problem(3, WeightSpec::type_b(2.0), "dirac", m), numeric()).value;
    v.check(rel(gamma, expect) <= 1e-6 && rel(ck, expect) <= 1e-6 && rel(num, expect) <= 1e-3,
            fmt("B~ m=%g: gamma %.12f, c_k %.12f", m, gamma, ck) + fmt(", numeric %.9f", num));
  }
  for (double m : {1.0, 0.0}) {
    const double c = dirac_constant(make_problem(3, WeightSpec::type_c(2.0), "dirac", m), numeric()).value;
    v.check(rel(c, pi) <= 1e-2, fmt("C~ m=%g numeric %.9f", m, c));
  }
  for (double m : {1.0, 0.0}) {
    const double a = dirac_constant(make_problem(3, WeightSpec::type_a(2.0), "dirac", m), numeric()).value;
    v.check(a >= pi - 1e-6 && a <= 2 * pi + 1e-6, fmt("A~ d=3 m=%g numeric %.7f in [pi, 2pi]", m, a));
  }
  const ConstantReport a5 = dirac_constant(make_problem(5, WeightSpec::type_a(2.0), "dirac", 1.0));
  v.check(a5.method == Method::bound_only && a5.upper_bound && *a5.upper_bound <= pi + 1e-9,
          fmt("A~ d=5 bound_only, upper %.10f", a5.upper_bound.value_or(-1)));
  return v;
}

Verdict identities() {
  Verdict v;
  std::vector<verify::CheckResult> all;
  for (const char* suite : {"specialfn", "harmonics", "algebra"}) {
    auto part = verify::run_suite(suite);
    all.insert(all.end(), part.begin(), part.end());
  }
  residual_check(v, all, "anticommutation", "anticommutation", 1e-14);
  residual_check(v, all, "A_{k+1}^n A_k^n = 0", "A_{k+1} A_k = 0", 1e-12);
  residual_check(v, all, "A^T A + A_{k-1} A_{k-1}^T", "A^T A + A A^T = I", 1e-12);
  residual_check(v, all, "det A_k^n", "det A = 0", 1e-12);
  residual_check(v, all, "kernel vectors", "basis pair relations", 1e-12);
  residual_check(v, all, "Y-block expansion", "sigma.omega expansion", 1e-10);
  residual_check(v, all, "alpha.omega E", "alpha.omega intertwining", 1e-10);
  residual_check(v, all, "beta E", "beta intertwining", 1e-10);
  residual_check(v, all, "Gegenbauer identity", "Gegenbauer identities", 1e-10);
  return v;
}

Verdict eigen_consistency() {
  Verdict v;
  const auto checks = verify::run_suite("algebra");
  residual_check(v, checks, "max eigenvalue of Lambda-tilde", "max eigenvalue vs formula, 1000 draws", 1e-12);
  residual_check(v, checks, "extremiser_space vectors", "extremiser vectors", 1e-12);
  return v;
}

Verdict funk_hecke() {
  Verdict v;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto F = [](double t) { return std::exp(-(1 - t)); };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double theta = std::acos(2 * u(rng) - 1);
    const double phi = 2 * pi * u(rng);
    for (int k = 0; k <= 6; ++k)
      for (int n = -k; n <= k; ++n) worst = std::max(worst, oracle::funk_hecke_residual(F, k, n, theta, phi));
  }
  v.check(worst <= 1e-8, fmt("F = exp(-(1-t)), k <= 6, all n, 20 directions: max residual %.1e (tol 1e-8)", worst));
  return v;
}

Verdict norm_equivalence() {
  Verdict v;
  for (const char* name : {"d2_k0_m0", "d2_k0_m1", "d3_k0_m0", "d3_k0_m1", "d3_k1_m0", "d3_k1_m1"}) {
    const auto r = oracle::run_scenario(oracle::load_scenario(std::string(KYSHARP_SCENARIO_DIR) + "/" + name + ".kv"));
    v.check(r.rel_diff <= 0.05 && r.detail.tail_fraction < 0.02,
            std::string(name) + fmt(" rel_diff %.1e tail %.1e", r.rel_diff, r.detail.tail_fraction));
  }
  return v;
}

Verdict parseval() {
  Verdict v;
  const auto checks = verify::run_suite("harmonics");
  residual_check(v, checks, "Parseval", "Parseval", 1e-8);
  residual_check(v, checks, "synthesize(decompose(f))", "round trip", 1e-8);
  return v;
}

Verdict equivalence_chain() {
  Verdict v;
  int passed = 0, total = 0;
  for (int d : {2, 3})
    for (double m : {0.0, 1.0})
      for (const WeightSpec& w : {WeightSpec::type_b(d == 2 ? 1.5 : 2.0), WeightSpec::type_c(2.0)}) {
        const EquivalenceReport eq = equivalence_check(make_problem(d, w, "dirac", m));
        ++total;
        passed += eq.pass ? 1 : 0;
      }
  v.check(passed == total, fmt("C/2 <= C~ <= C holds for %g of %g triples", passed, total));
  for (int d : {2, 3}) {
    const EquivalenceReport sharp = equivalence_check(make_problem(d, WeightSpec::type_b(d == 2 ? 1.5 : 2.0), "dirac", 1.0));
    v.check(rel(sharp.dirac, sharp.upper) <= 1e-6, fmt("d=%g m=1: C~ / C = %.12f", d, sharp.dirac / sharp.upper));
    const EquivalenceReport limit = equivalence_check(make_problem(d, WeightSpec::type_b(d - 1e-3), "dirac", 0.0));
    const double ratio = limit.dirac / limit.lower;
    v.check(std::abs(ratio - 1.0) <= 1e-2, fmt("d=%g m=0 s=d-1e-3: C~ / (C/2) = %.6f", d, ratio));
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"AC1 closed-form levels, power weight", closed_form_levels},
      {"AC2 Schrodinger constants", schrodinger_constants},
      {"AC3 Dirac constants", dirac_constants},
      {"AC4 identity suite", identities},
      {"AC5 eigen consistency", eigen_consistency},
      {"AC6 Funk-Hecke oracle", funk_hecke},
      {"AC7 direct vs spectral norm", norm_equivalence},
      {"AC8 decomposition Parseval and round trip", parseval},
      {"AC9 equivalence chain", equivalence_chain},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds);
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
