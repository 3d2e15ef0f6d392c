#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace php {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated Richardson remainder, absolute
  long evaluations = 0;
};

// Integrand produced a non-finite value.
class IntegrandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Refinement limit hit before the tolerance was met. Carries the best
// estimate so callers can decide whether it is usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, const QuadResult& best)
      : std::runtime_error(message), best_(best) {}
  const QuadResult& best_estimate() const { return best_; }

 private:
  QuadResult best_;
};

// Adaptive Simpson with Richardson extrapolation. Accepts an interval when
// the two-panel refinement changes the estimate by at most 15x the local
// tolerance budget (classic S(a,b) error model). a == b returns exactly 0.
// Deterministic: fixed subdivision order, no state.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 1e-14);

}  // namespace php
