#include "kysharp/keyvalue.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "kysharp/error.hpp"

namespace kysharp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const std::string& source, int line, const std::string& message) {
  throw Error(ErrorKind::parse_error, source + ":" + std::to_string(line) + ": " + message);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::istream& in, const std::string& source) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) parse_fail(source, line, "expected 'key = value', got '" + text + "'");
    KeyValue kv{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (kv.key.empty()) parse_fail(source, line, "empty key");
    if (!seen.insert(kv.key).second) parse_fail(source, line, "duplicate key '" + kv.key + "'");
    out.push_back(std::move(kv));
  }
  return out;
}

KeyValueReader::KeyValueReader(std::vector<KeyValue> entries, std::string source)
    : entries_(std::move(entries)), source_(std::move(source)) {}

const KeyValue* KeyValueReader::find(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

bool KeyValueReader::has(const std::string& key) const { return find(key) != nullptr; }

void KeyValueReader::fail(const std::string& key, const std::string& message) const {
  const KeyValue* e = find(key);
  parse_fail(source_, e ? e->line : 0, message);
}

std::string KeyValueReader::get_string(const std::string& key, const std::string& fallback) const {
  const KeyValue* e = find(key);
  return e ? e->value : fallback;
}

std::string KeyValueReader::require_string(const std::string& key) const {
  const KeyValue* e = find(key);
  if (!e) parse_fail(source_, 0, "missing required key '" + key + "'");
  return e->value;
}

double KeyValueReader::get_double(const std::string& key, double fallback) const {
  const KeyValue* e = find(key);
  if (!e) return fallback;
  std::istringstream is(e->value);
  is.imbue(std::locale::classic());
  double x = 0.0;
  if (!(is >> x) || !(is >> std::ws).eof()) fail(key, "'" + key + "' is not a number: '" + e->value + "'");
  return x;
}

int KeyValueReader::get_int(const std::string& key, int fallback) const {
  const KeyValue* e = find(key);
  if (!e) return fallback;
  std::istringstream is(e->value);
  long x = 0;
  if (!(is >> x) || !(is >> std::ws).eof()) fail(key, "'" + key + "' is not an integer: '" + e->value + "'");
  return static_cast<int>(x);
}

void KeyValueReader::reject_unknown(const std::vector<std::string>& allowed) const {
  for (const auto& e : entries_)
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      parse_fail(source_, e.line, "unknown key '" + e.key + "'");
}

ProblemSpec problem_from_key_values(const KeyValueReader& rd) {
  rd.reject_unknown({"d", "m", "family", "s", "psi", "phi"});
  ProblemSpec spec;
  rd.require_string("d");
  spec.d = rd.get_int("d", 0);
  const double m = rd.get_double("m", 0.0);
  const std::string family = rd.require_string("family");
  if (family == "A" || family == "B" || family == "C") {
    rd.require_string("s");
    const double sv = rd.get_double("s", 0.0);
    spec.weight = family == "A" ? WeightSpec::type_a(sv)
                  : family == "B" ? WeightSpec::type_b(sv)
                                  : WeightSpec::type_c(sv);
  } else if (family == "gaussian") {
    if (rd.has("s")) rd.fail("s", "'s' does not apply to the gaussian family");
    spec.weight = WeightSpec::gaussian();
  } else {
    rd.fail("family", "unknown family '" + family + "' (expected A, B, C or gaussian)");
  }

  const std::string phi = rd.get_string("phi", "r2");
  if (phi == "r2") {
    spec.dispersion = DispersionSpec::schrodinger();
  } else if (phi == "relativistic") {
    spec.dispersion = DispersionSpec::relativistic(m);
  } else {
    rd.fail("phi", "unknown phi '" + phi + "' (expected r2 or relativistic)");
  }

  const std::string psi = rd.get_string("psi", "family");
  std::istringstream is(psi);
  is.imbue(std::locale::classic());
  std::string head;
  is >> head;
  if (head == "family") {
    spec.smoothing = family_smoothing(spec.weight);
  } else if (head == "dirac-family") {
    spec.smoothing = family_dirac_smoothing(spec.weight, m);
  } else if (head == "power") {
    SmoothingSpec sm;
    if (!(is >> sm.scale >> sm.p >> sm.q >> sm.e) || !(is >> std::ws).eof())
      rd.fail("psi", "psi = power needs four numbers: SCALE P Q E");
    sm.mass = m;
    spec.smoothing = sm;
  } else {
    rd.fail("psi", "unknown psi '" + psi + "' (expected family, dirac-family or power ...)");
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse_error, std::string("invalid problem: ") + e.what());
  }
  return spec;
}

ProblemSpec read_problem_config(std::istream& in, const std::string& source) {
  return problem_from_key_values(KeyValueReader(parse_key_values(in, source), source));
}

void write_problem_config(std::ostream& out, const ProblemSpec& spec) {
  require(spec.weight.family != WeightFamily::Custom, ErrorKind::invalid_parameter,
          "write_problem_config: custom weights have no text form");
  require(spec.dispersion.kind != DispersionKind::Custom, ErrorKind::invalid_parameter,
          "write_problem_config: custom dispersions have no text form");
  const SmoothingSpec& sm = spec.smoothing;
  require(!sm.has_extra(), ErrorKind::invalid_parameter,
          "write_problem_config: smoothing with an extra factor has no text form");
  const double m = spec.dispersion.kind == DispersionKind::Relativistic ? spec.dispersion.m : sm.mass;
  require(sm.e == 0.0 || sm.mass == m, ErrorKind::invalid_parameter,
          "write_problem_config: smoothing mass differs from m");
  out << "d = " << spec.d << "\n";
  out << "m = " << num(m) << "\n";
  out << "family = " << to_string(spec.weight.family) << "\n";
  if (spec.weight.family != WeightFamily::Gaussian) out << "s = " << num(spec.weight.s) << "\n";
  out << "phi = " << (spec.dispersion.kind == DispersionKind::Relativistic ? "relativistic" : "r2") << "\n";
  out << "psi = power " << num(sm.scale) << " " << num(sm.p) << " " << num(sm.q) << " " << num(sm.e) << "\n";
}

}  // namespace kysharp
