#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpb {

/// Input outside the documented parameter domain.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown: non-convergent series or iteration, singular solve.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The convolution weights are not positive and strictly decreasing.
class StabilityError : public NumericalError {
public:
  StabilityError(const std::string& what, std::size_t index)
      : NumericalError(what), index_(index) {}

  /// 1-based weight index where the precondition first fails.
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

/// Newton iteration did not reach the requested accuracy.
class NonConvergenceError : public NumericalError {
public:
  NonConvergenceError(const std::string& what, std::size_t step, std::size_t iterations)
      : NumericalError(what), step_(step), iterations_(iterations) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t iterations() const noexcept { return iterations_; }

private:
  std::size_t step_;
  std::size_t iterations_;
};

} // namespace cpb
