#include "php/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace php {

namespace {

constexpr int kMaxDepth = 50;

struct Worker {
  const std::function<double(double)>& f;
  // Roundoff floor: once the Richardson correction falls below the rounding
  // noise of the integral's own magnitude, further bisection cannot improve
  // the result (it only re-rounds it). Without this, integrands with a steep
  // exponential boundary layer refine forever because the eps budget halves
  // faster than the achievable local error shrinks.
  double noise_floor = 0.0;
  long evaluations = 0;
  double error_estimate = 0.0;
  bool depth_exceeded = false;

  double eval(double x) {
    ++evaluations;
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrand non-finite at x = " << x;
      throw IntegrandError(msg.str());
    }
    return v;
  }

  // fa/fm/fb are f at a, midpoint, b; whole is Simpson on [a,b].
  double refine(double a, double b, double fa, double fm, double fb, double whole,
                double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const bool converged = std::abs(delta) <= std::max(15.0 * eps, noise_floor);
    if (converged || depth >= kMaxDepth) {
      if (!converged) depth_exceeded = true;
      error_estimate += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
  }
};

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol) {
  if (!(std::isfinite(a) && std::isfinite(b) && a <= b)) {
    throw std::invalid_argument("integrate: requires finite a <= b");
  }
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("integrate: tolerances must be > 0");
  }
  if (a == b) return {0.0, 0.0, 0};

  Worker w{f};
  const double fa = w.eval(a);
  const double m = 0.5 * (a + b);
  const double fm = w.eval(m);
  const double fb = w.eval(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double eps = std::max(abs_tol, rel_tol * std::abs(whole));
  // ~64 ulps of the coarse whole-interval estimate; triggers only where the
  // eps-halving budget has dropped below representable accuracy.
  w.noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(whole);
  QuadResult result;
  result.value = w.refine(a, b, fa, fm, fb, whole, eps, 0);
  result.error_estimate = w.error_estimate;
  result.evaluations = w.evaluations;
  if (w.depth_exceeded) {
    std::ostringstream msg;
    msg << "integrate: refinement limit (depth " << kMaxDepth
        << ") reached before tolerance; best estimate " << result.value;
    throw ConvergenceError(msg.str(), result);
  }
  return result;
}

}  // namespace php
