#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kysharp/problem.hpp"

namespace kysharp {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Reads `key = value` lines. Blank lines and lines starting with '#' are
/// skipped; trailing '#' comments are stripped. Throws parse_error naming
/// `source` and the line for a missing '=', an empty key or a repeated key.
std::vector<KeyValue> parse_key_values(std::istream& in, const std::string& source = "<input>");

/// Typed access to parsed entries, tracking which keys were read.
class KeyValueReader {
 public:
  KeyValueReader(std::vector<KeyValue> entries, std::string source);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string require_string(const std::string& key) const;

  /// Throws parse_error for the first entry whose key is not in `allowed`.
  void reject_unknown(const std::vector<std::string>& allowed) const;

  /// Throws parse_error at the line of `key`.
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  const KeyValue* find(const std::string& key) const;

  std::vector<KeyValue> entries_;
  std::string source_;
};

/// Problem configuration with keys d, m, family, s, psi, phi.
///
///   family  A | B | C | gaussian
///   phi     r2 | relativistic      (relativistic uses m)
///   psi     family | dirac-family | power SCALE P Q E
///
/// `power` is scale * r^P * (1 + r^2)^Q * (r^2 + m^2)^{E/2}. Unknown keys are
/// errors; d and family are required, s is required for A, B and C.
ProblemSpec read_problem_config(std::istream& in, const std::string& source = "<config>");
ProblemSpec problem_from_key_values(const KeyValueReader& reader);

/// Writes a spec in the same format. Custom weights, custom dispersions and
/// smoothing functions with an extra factor throw invalid_parameter.
void write_problem_config(std::ostream& out, const ProblemSpec& spec);

}  // namespace kysharp
