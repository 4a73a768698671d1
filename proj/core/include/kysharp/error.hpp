#pragma once

#include <stdexcept>
#include <string>

namespace kysharp {

enum class ErrorKind {
  invalid_parameter,
  divergent_transform,
  quadrature_failure,
  unsupported_dimension,
  degenerate_symbol,
  index_out_of_range,
  sup_not_localized,
  truncation_not_converged,
  parse_error,
};

const char* to_string(ErrorKind kind) noexcept;

/// Exception type thrown by every kysharp module; `kind()` lets callers
/// (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace kysharp
