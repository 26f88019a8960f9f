#pragma once

#include <stdexcept>
#include <string>

namespace gmlab {

// A constructor or setter was handed a value outside its admissible range.
struct invalid_parameter : std::invalid_argument {
  explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematically well-posed operation was evaluated outside its domain
// (Laplace transform left of the abscissa, equilibrium for alpha <= 1, ...).
struct domain_error : std::domain_error {
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// An iterative routine failed to reach its tolerance, or an intermediate
// quantity left the representable range.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// The Lyapunov functional was requested at a time before one full memory
// window of history is available.
struct insufficient_history : std::runtime_error {
  explicit insufficient_history(const std::string& what) : std::runtime_error(what) {}
};

// Config file could not be parsed; `line` is 1-based.
struct parse_error : std::runtime_error {
  parse_error(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  int line;
};

// Config parsed fine but a field's value is inconsistent or out of range.
struct validation_error : std::runtime_error {
  validation_error(std::string field_name, const std::string& what)
      : std::runtime_error(field_name + ": " + what), field(std::move(field_name)) {}
  std::string field;
};

}  // namespace gmlab
