#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace splitflow {

// Precondition violations (bad grid sizes, unknown scheme names, mismatched
// problem data) are reported as std::invalid_argument. The types below cover
// numerical failures that callers are expected to catch and record.

/// Finite-time blow-up of a closed-form nonlinear subflow.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}

  /// Effective flow time at which the radicand reached zero.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Non-finite or exploding values inside an explicit integrator.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, std::size_t substep)
      : std::runtime_error(what), substep_(substep) {}

  std::size_t substep() const noexcept { return substep_; }

 private:
  std::size_t substep_;
};

/// Too few usable data points for a fit.
class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace splitflow
