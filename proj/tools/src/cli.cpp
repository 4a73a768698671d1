#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kysharp/error.hpp"
#include "kysharp/keyvalue.hpp"
#include "kysharp/lambda.hpp"
#include "kysharp/optimum.hpp"
#include "kysharp/oracle.hpp"
#include "kysharp/parallel.hpp"
#include "kysharp/verify.hpp"

#ifndef KYSHARP_VERSION
#define KYSHARP_VERSION "unknown"
#endif
#ifndef KYSHARP_SCENARIO_DIR
#define KYSHARP_SCENARIO_DIR "scenarios"
#endif

namespace kysharp::cli {

namespace {

using json = nlohmann::ordered_json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::sup_not_localized: return sup_not_localized;
    case ErrorKind::quadrature_failure:
    case ErrorKind::divergent_transform: return quadrature_failure;
    case ErrorKind::truncation_not_converged: return truncation_not_converged;
    default: return usage_error;
  }
}

struct IntRange {
  int lo = 0;
  int hi = -1;
};

// "a..b" or "a"; b < a is the empty range.
IntRange parse_int_range(const std::string& text) {
  IntRange r;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      r.lo = std::stoi(text.substr(0, dots), &used);
      if (used != dots) throw std::invalid_argument(text);
      const std::string tail = text.substr(dots + 2);
      r.hi = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    }
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_parameter, "bad range '" + text + "' (expected a..b or a)");
  }
  return r;
}

std::pair<double, double> parse_real_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const double x = std::stod(text);
      return {x, x};
    }
    return {std::stod(text.substr(0, dots)), std::stod(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_parameter, "bad range '" + text + "' (expected a..b or a)");
  }
}

WeightSpec weight_from_flags(const std::string& family, double s) {
  if (family == "A") return WeightSpec::type_a(s);
  if (family == "B") return WeightSpec::type_b(s);
  if (family == "C") return WeightSpec::type_c(s);
  if (family == "gaussian") return WeightSpec::gaussian();
  throw Error(ErrorKind::invalid_parameter, "unknown family '" + family + "' (expected A, B, C or gaussian)");
}

// Flags shared by lambda and constant.
struct ProblemFlags {
  std::string config;
  int d = 3;
  std::string family = "B";
  double s = 2.0;
  double m = 0.0;
};

void add_problem_flags(CLI::App* app, ProblemFlags& f) {
  auto* config = app->add_option("--config", f.config, "Problem file with keys d, m, family, s, psi, phi");
  app->add_option("--d", f.d, "Dimension (2..6)")->excludes(config);
  app->add_option("--family", f.family, "Weight family: A, B, C or gaussian")->excludes(config);
  app->add_option("--s", f.s, "Weight exponent s")->excludes(config);
  app->add_option("--m", f.m, "Mass m >= 0")->excludes(config);
}

ProblemSpec load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::parse_error, "cannot open config '" + path + "'");
  return read_problem_config(in, path);
}

ProblemSpec problem_from_flags(const ProblemFlags& f, const std::string& equation) {
  if (!f.config.empty()) {
    ProblemSpec spec = load_config(f.config);
    const bool relativistic = spec.dispersion.kind == DispersionKind::Relativistic;
    const bool wants_relativistic = equation != "schrodinger";
    require(relativistic == wants_relativistic, ErrorKind::invalid_parameter,
            "config phi does not match equation '" + equation + "'");
    return spec;
  }
  return make_problem(f.d, weight_from_flags(f.family, f.s), equation, f.m);
}

std::string num17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json report_json(const ConstantReport& r, const SearchPolicy& policy, const std::string& equation,
                 const ProblemSpec& spec, bool operator_norm) {
  const double f = operator_norm ? std::pow(2.0 * std::numbers::pi, spec.d) : 1.0;
  json j;
  j["constant"] = r.value * f;
  j["normalization"] = operator_norm ? "operator" : "paper";
  j["equation"] = equation;
  j["d"] = spec.d;
  j["family"] = to_string(spec.weight.family);
  if (spec.weight.family != WeightFamily::Gaussian && spec.weight.family != WeightFamily::Custom)
    j["s"] = spec.weight.s;
  j["m"] = spec.dispersion.m;
  json at = json::object();
  if (r.attaining_k) at["k"] = *r.attaining_k;
  else at["k"] = nullptr;
  switch (r.location) {
    case Location::interior:
      at["r"] = r.attaining_r ? json(*r.attaining_r) : json(nullptr);
      break;
    case Location::flat_interval:
      at["limit"] = "flat_interval";
      if (r.attaining_r && r.attaining_r_end) at["r_interval"] = json::array({*r.attaining_r, *r.attaining_r_end});
      break;
    case Location::limit_zero:
    case Location::limit_infinity:
      at["limit"] = to_string(r.location);
      break;
    case Location::unknown:
      at["r"] = nullptr;
      break;
  }
  j["attaining"] = at;
  j["extremiser"] = to_string(r.extremiser);
  j["method"] = to_string(r.method);
  j["error_estimate"] = r.error_estimate * f;
  if (r.lower_bound) j["lower_bound"] = *r.lower_bound * f;
  if (r.upper_bound) j["upper_bound"] = *r.upper_bound * f;
  j["policy_echo"] = {{"k_max", policy.k_max},
                      {"r_min", policy.r_min},
                      {"r_max", policy.r_max},
                      {"points_per_decade", policy.points_per_decade},
                      {"golden_iterations", policy.golden_iterations},
                      {"eps_flat", policy.eps_flat},
                      {"prefer_closed_form", policy.prefer_closed_form}};
  json diag = json::object();
  if (!r.per_k_maxima.empty()) {
    json mx = json::array();
    for (double v : r.per_k_maxima) mx.push_back(v * f);
    diag["per_k_maxima"] = mx;
    diag["k_scan_stopped_early"] = r.k_scan_stopped_early;
  }
  if (!r.notes.empty()) diag["notes"] = r.notes;
  j["diagnostics"] = diag;
  return j;
}

std::filesystem::path resolve_scenario(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) return arg;
  for (const fs::path& candidate : {fs::path(scenario_dir()) / (arg + ".kv"), fs::path(scenario_dir()) / arg})
    if (fs::exists(candidate)) return candidate;
  throw Error(ErrorKind::parse_error, "scenario '" + arg + "' is neither a file nor a bundled name");
}

}  // namespace

std::string scenario_dir() {
  namespace fs = std::filesystem;
  if (const char* env = std::getenv("KYSHARP_SCENARIO_DIR")) return env;
  std::error_code ec;
  if (fs::is_directory(KYSHARP_SCENARIO_DIR, ec)) return KYSHARP_SCENARIO_DIR;
  // installed layout: <prefix>/bin/kysharp next to <prefix>/share/kysharp/scenarios
  const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const fs::path installed = exe.parent_path().parent_path() / "share" / "kysharp" / "scenarios";
    if (fs::is_directory(installed, ec)) return installed.string();
  }
  return KYSHARP_SCENARIO_DIR;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp constants of smoothing estimates for Schrodinger, relativistic and Dirac equations", "kysharp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", KYSHARP_VERSION);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);

  // lambda
  auto* lam = app.add_subcommand("lambda", "Sample lambda curves as CSV");
  ProblemFlags lam_flags;
  add_problem_flags(lam, lam_flags);
  std::string kind = "schrodinger", k_range = "0..3", r_range = "0.01..100", lam_output;
  int points = 41;
  lam->add_option("--kind", kind, "schrodinger, dirac or dirac-radial")
      ->check(CLI::IsMember({"schrodinger", "dirac", "dirac-radial"}));
  lam->add_option("--k", k_range, "Index range a..b (empty when b < a)");
  lam->add_option("--r", r_range, "Radius range a..b, sampled geometrically");
  lam->add_option("--points", points, "Number of radii")->check(CLI::PositiveNumber);
  lam->add_option("-o,--output", lam_output, "Write CSV here instead of stdout");

  // constant
  auto* con = app.add_subcommand("constant", "Compute a sharp constant as JSON");
  ProblemFlags con_flags;
  add_problem_flags(con, con_flags);
  std::string equation = "schrodinger", norm = "paper";
  SearchPolicy policy;
  bool numeric = false;
  double expect = 0.0, rtol = 1e-6;
  con->add_option("--equation", equation, "schrodinger, relativistic, dirac or dirac-radial")
      ->check(CLI::IsMember({"schrodinger", "relativistic", "dirac", "dirac-radial"}));
  con->add_option("--norm", norm, "paper: sup lambda / (2 pi)^{d-1}; operator: (2 pi)^d times that")
      ->check(CLI::IsMember({"paper", "operator"}));
  con->add_option("--k-max", policy.k_max, "Largest k scanned");
  con->add_option("--r-min", policy.r_min, "Left end of the radius grid");
  con->add_option("--r-max", policy.r_max, "Right end of the radius grid");
  con->add_option("--points-per-decade", policy.points_per_decade, "Radius grid density");
  con->add_option("--golden-iterations", policy.golden_iterations, "Golden-section refinement steps");
  con->add_option("--eps-flat", policy.eps_flat, "Relative flatness tolerance");
  con->add_flag("--numeric", numeric, "Skip closed forms and run the numeric search");
  auto* expect_opt = con->add_option("--expect", expect, "Exit 4 unless the constant matches this value");
  con->add_option("--rtol", rtol, "Relative tolerance for --expect")->needs(expect_opt);

  // verify
  auto* ver = app.add_subcommand("verify", "Run identity suites");
  std::string suite = "all";
  std::uint64_t seed = 20240611;
  bool ver_json = false;
  ver->add_option("--suite", suite, "specialfn, harmonics, algebra, funk-hecke, equivalence or all")
      ->check(CLI::IsMember({"specialfn", "harmonics", "algebra", "funk-hecke", "equivalence", "all"}));
  ver->add_option("--seed", seed, "Seed of the randomized spot checks");
  ver->add_flag("--json", ver_json, "Print JSON instead of a table");

  // oracle
  auto* ora = app.add_subcommand("oracle", "Compare the direct and spectral norms on oracle scenarios");
  std::vector<std::string> scenarios;
  std::string log_path;
  ora->add_option("scenarios", scenarios, "Scenario files or bundled names")->required();
  ora->add_option("--log", log_path, "Append result rows to this CSV file");

  auto* info = app.add_subcommand("info", "Print version, exit codes and bundled scenarios");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << KYSHARP_VERSION << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  set_max_threads(threads);
  try {
    if (*lam) {
      const IntRange kr = parse_int_range(k_range);
      const auto [ra, rb] = parse_real_range(r_range);
      require(ra > 0.0 && rb >= ra, ErrorKind::invalid_parameter, "radius range must satisfy 0 < a <= b");
      const std::string eq = kind == "schrodinger" ? "schrodinger" : "dirac";
      const ProblemSpec spec = problem_from_flags(lam_flags, eq);
      const CurveKind ck = kind == "schrodinger" ? CurveKind::schrodinger
                           : kind == "dirac"     ? CurveKind::dirac
                                                 : CurveKind::dirac_radial;
      require(kr.lo >= 0 || spec.d == 2, ErrorKind::invalid_parameter, "negative k is only defined for d = 2");
      const std::vector<double> grid = points == 1 || ra == rb ? std::vector<double>{ra} : log_grid(ra, rb, points);
      std::vector<LambdaProfile> profiles;
      if (kr.hi >= kr.lo) {
        if (ck == CurveKind::dirac_radial) {
          profiles.push_back(sample_profile(spec, 0, ck, grid));
        } else if (kr.lo >= 0) {
          profiles = sample_profiles(spec, kr.hi, ck, grid);
          profiles.erase(profiles.begin(), profiles.begin() + kr.lo);
        } else {
          for (int k = kr.lo; k <= kr.hi; ++k) profiles.push_back(sample_profile(spec, k, ck, grid));
        }
      }
      if (lam_output.empty()) {
        write_profiles_csv(out, profiles);
      } else {
        std::ofstream f(lam_output);
        require(static_cast<bool>(f), ErrorKind::invalid_parameter, "cannot write '" + lam_output + "'");
        write_profiles_csv(f, profiles);
      }
      return ok;
    }

    if (*con) {
      policy.prefer_closed_form = !numeric;
      const ProblemSpec spec = problem_from_flags(con_flags, equation);
      ConstantReport report;
      if (equation == "schrodinger" || equation == "relativistic")
        report = schrodinger_constant(spec, policy);
      else if (equation == "dirac")
        report = dirac_constant(spec, policy);
      else
        report = dirac_radial_constant(spec, policy);
      const json j = report_json(report, policy, equation, spec, norm == "operator");
      out << j.dump(2) << "\n";
      if (expect_opt->count() > 0) {
        const double value = j["constant"].get<double>();
        const double rel = std::abs(value - expect) / std::max(std::abs(expect), 1e-300);
        if (!(rel <= rtol)) {
          err << "expectation mismatch: got " << num17(value) << ", expected " << num17(expect)
              << " (relative difference " << num17(rel) << " > " << num17(rtol) << ")\n";
          return expectation_mismatch;
        }
      }
      return ok;
    }

    if (*ver) {
      const auto results = verify::run_suite(suite, seed);
      const bool pass = verify::all_pass(results);
      if (ver_json) {
        json j;
        j["suite"] = suite;
        j["seed"] = seed;
        j["pass"] = pass;
        json checks = json::array();
        for (const auto& r : results)
          checks.push_back({{"suite", r.suite}, {"name", r.name}, {"residual", r.residual},
                            {"tolerance", r.tolerance}, {"pass", r.pass}});
        j["checks"] = checks;
        out << j.dump(2) << "\n";
      } else {
        verify::write_table(out, results);
        out << (pass ? "all checks passed\n" : "some checks FAILED\n");
      }
      return pass ? ok : verify_failure;
    }

    if (*ora) {
      std::vector<oracle::ScenarioResult> results;
      for (const auto& name : scenarios) results.push_back(oracle::run_scenario(oracle::load_scenario(resolve_scenario(name).string())));
      oracle::write_result_csv_header(out);
      for (const auto& r : results) oracle::write_result_csv_row(out, r);
      if (!log_path.empty()) {
        const bool fresh = !std::filesystem::exists(log_path) || std::filesystem::file_size(log_path) == 0;
        std::ofstream log(log_path, std::ios::app);
        require(static_cast<bool>(log), ErrorKind::invalid_parameter, "cannot append to '" + log_path + "'");
        if (fresh) oracle::write_result_csv_header(log);
        for (const auto& r : results) oracle::write_result_csv_row(log, r);
      }
      bool pass = true;
      char line[256];
      for (const auto& r : results) {
        const bool good = r.rel_diff <= r.budget;
        pass = pass && good;
        std::snprintf(line, sizeof line, "%-12s spectral %.10g  direct %.10g  rel_diff %.3e  budget %.3g  time tail %.2e  %s\n",
                      r.name.c_str(), r.spectral, r.direct, r.rel_diff, r.budget, r.detail.tail_fraction,
                      good ? "ok" : "MISMATCH");
        err << line;
      }
      return pass ? ok : verify_failure;
    }

    if (*info) {
      out << "kysharp " << KYSHARP_VERSION << "\n"
          << "threads: " << max_threads() << "\n"
          << "weight families: A (1+r^2)^{-s/2}, B r^{-s}, C (1+r^2)^{-s/2}, gaussian exp(-r^2/2)\n"
          << "equations: schrodinger, relativistic, dirac, dirac-radial\n"
          << "normalizations: paper (sup lambda / (2 pi)^{d-1}), operator ((2 pi)^d times paper)\n"
          << "exit codes: 0 ok, 1 bad flags or input, 2 sup not localized, 3 quadrature failure,\n"
          << "            4 expectation mismatch, 5 verification failure, 6 truncation not converged\n"
          << "scenario dir: " << scenario_dir() << "\n";
      std::vector<std::string> names;
      std::error_code ec;
      for (const auto& e : std::filesystem::directory_iterator(scenario_dir(), ec))
        if (e.path().extension() == ".kv") names.push_back(e.path().stem().string());
      std::sort(names.begin(), names.end());
      for (const auto& n : names) out << "  " << n << "\n";
      return ok;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace kysharp::cli
