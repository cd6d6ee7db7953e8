#pragma once

#include <stdexcept>
#include <string>

namespace randcrit {

// Bad shapes, out-of-range indices, unsupported sizes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ensemble parameters violating a - b > 0, c > 0, a + (m-1) b > 0, or the
// invariance condition where one is required.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A covariance that had to be inverted turned out singular.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or iteration failed to reach the requested tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace randcrit
