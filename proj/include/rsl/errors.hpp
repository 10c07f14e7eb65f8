#pragma once

#include <stdexcept>
#include <string>

namespace rsl {

/// Base class for all numerical failures raised by this library.
/// Argument/precondition violations use std::invalid_argument directly.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// |u| or |u_r| exceeded the overflow guard during integration.
class blow_up_error : public error {
 public:
  explicit blow_up_error(const std::string& msg) : error(msg) {}
};

/// Adaptive step control underflowed.
class stiffness_error : public error {
 public:
  explicit stiffness_error(const std::string& msg) : error(msg) {}
};

/// A test function failed the endpoint admissibility check.
class inadmissible_test_function : public error {
 public:
  explicit inadmissible_test_function(const std::string& msg) : error(msg) {}
};

/// Too few grid nodes to discretize an operator or run a dyadic test.
class discretization_error : public error {
 public:
  explicit discretization_error(const std::string& msg) : error(msg) {}
};

/// Grid does not resolve enough dyadic levels for a requested check.
class insufficient_resolution : public error {
 public:
  explicit insufficient_resolution(const std::string& msg) : error(msg) {}
};

/// u_r fell below the underflow guard where a check divides by it.
class derivative_vanishes : public error {
 public:
  explicit derivative_vanishes(const std::string& msg) : error(msg) {}
};

/// Shooting ran past the search horizon without a sign change.
class no_zero_found : public error {
 public:
  explicit no_zero_found(const std::string& msg) : error(msg) {}
};

/// A nonlinearity violated a positivity requirement where one is assumed.
class invalid_nonlinearity : public error {
 public:
  explicit invalid_nonlinearity(const std::string& msg) : error(msg) {}
};

/// u_r changes sign where a check requires monotonicity.
class monotonicity_violation : public error {
 public:
  explicit monotonicity_violation(const std::string& msg) : error(msg) {}
};

}  // namespace rsl
