#pragma once

#include <stdexcept>
#include <string>

namespace dsaddle {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Block dimensions that do not fit together.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A block that must be (semi)definite is not, or a factorization failed.
class DefinitenessError : public Error {
 public:
  using Error::Error;
};

/// Scalar inputs violating a documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class UnsupportedLayoutError : public Error {
 public:
  using Error::Error;
};

/// A preconditioner strategy was requested for a system lacking the structure it needs.
class StrategyMismatchError : public Error {
 public:
  using Error::Error;
};

/// A cubic did not have the one-negative / two-positive root pattern.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// Dense oracle requested above its size cutoff.
class OversizeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Lanczos ran out of iterations; carries the best Ritz estimates reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_min, double best_max,
                   double residual)
      : Error(what), best_min_(best_min), best_max_(best_max), residual_(residual) {}

  double best_min() const noexcept { return best_min_; }
  double best_max() const noexcept { return best_max_; }
  double residual() const noexcept { return residual_; }

 private:
  double best_min_;
  double best_max_;
  double residual_;
};

}  // namespace dsaddle
