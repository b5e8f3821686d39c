#pragma once

#include <stdexcept>
#include <string>

namespace decohere {

/// Caller violated an operation's contract (dimension mismatch, bad argument).
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Experiment or model configuration cannot be realized.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Non-finite amplitudes or other numerical breakdown during evolution.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Iterative eigensolver ran out of iterations.
class ConvergenceError : public NumericError {
  public:
    ConvergenceError(const std::string& what, double best_residual)
        : NumericError(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

  private:
    double best_residual_;
};

} // namespace decohere
