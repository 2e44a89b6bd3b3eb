#pragma once

#include <stdexcept>
#include <string>

namespace fplap {

// Invalid argument or evaluation point outside the admissible region.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive refinement ran out of budget before meeting the tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double value, double err_est)
      : std::runtime_error(what), value_(value), err_est_(err_est) {}

  double partial_value() const noexcept { return value_; }
  double err_est() const noexcept { return err_est_; }

 private:
  double value_;
  double err_est_;
};

// The integrand produced NaN or infinity at an interior node.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByNearZero : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fplap
