#ifndef LINCOAG_ERRORS_HPP_
#define LINCOAG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lincoag {

// Error categories map onto CLI exit codes: config -> 2, numeric/resource -> 3.
enum class ErrorCategory { config, domain, numeric, resource };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), category_(cat) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// Invalid parameter or precondition violation (bad sigma, bad flag value, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(ErrorCategory::domain, msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(ErrorCategory::config, msg) {}
};

// A computation failed to reach its tolerance or hit a pole/overflow guard.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(ErrorCategory::numeric, msg) {}
};

// Quadrature non-convergence; carries the best estimate and its error bound.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& msg, double best, double err_bound)
      : NumericError(msg), best_estimate(best), error_bound(err_bound) {}
  double best_estimate;
  double error_bound;
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& msg) : Error(ErrorCategory::resource, msg) {}
};

}  // namespace lincoag

#endif  // LINCOAG_ERRORS_HPP_
