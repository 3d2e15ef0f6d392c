#pragma once

#include <vector>

#include "php/model.hpp"

namespace php {

// Hole-angle kernel: half-angle subtended obstruction term for a hole whose
// center sits at distance r_y from the reference point, arcsin(D / (D + r_y)).
// Decreasing in r_y; pi/2 at r_y = 0. Domain error if r_y and d_hole are both 0.
double theta_angle(double r_y, double d_hole);

// Exponent kernels of the two contact-distance bounds. h1 covers the uniform
// reference point (domain |r - D| <= r_y <= r + D), h2 the hole-center
// reference point (domain 0 <= r_y <= r + D, requires r > D). Both are >= 0
// on their domains.
double h1(double r, double r_y, double d_hole);
double h2(double r, double r_y, double d_hole);

// Bound exponent integrals (both <= 0). g1 feeds the uniform-reference lower
// bound, g4 the hole-center one. Evaluated by adaptive quadrature at the
// given tolerances.
double g1(double r, const ModelParams& params, double rel_tol = 1e-10,
          double abs_tol = 1e-14);
double g4(double r, const ModelParams& params, double rel_tol = 1e-10,
          double abs_tol = 1e-14);

// First-moment density of the thinned process: lambda2 * exp(-lambda1*pi*D^2).
double equivalent_density(const ModelParams& params);

struct PartitionScheme;

// Elementary N-partition surrogate for g1: theta is frozen at each
// sub-interval's left endpoint (its maximum there), which keeps the result
// <= g1 and lets every piece integrate in closed form. This is the exponent
// integral behind lb_r1_closed_form, exposed for direct comparison against
// g1 and against independent transcriptions of the N = 1 formula.
double g1_closed_form(double r, const ModelParams& params,
                      const PartitionScheme& partition);

enum class BoundKind {
  kLbR1Theorem1,   // integral lower bound, uniform reference
  kLbR1ClosedForm, // N-partition closed-form lower bound, uniform reference
  kLbR2Theorem2,   // integral lower bound, hole-center reference
  kUbPpp,          // baseline-PPP upper bound (R2 variant for r > D)
  kApproxEquiv,    // equivalent-density approximation (not a bound)
};

// raw is the analytic value (can be far below 0 when the bound collapses);
// clamped = min(1, max(0, raw)) is what CDF consumers use.
struct BoundValue {
  double raw = 0.0;
  double clamped = 0.0;
  BoundKind kind = BoundKind::kUbPpp;
};

// How [lo, hi] splits for the closed-form bound: n equal sub-intervals.
// Refining N -> 2N nests the partition, so the bound is monotone
// nondecreasing along dyadic refinement.
struct PartitionScheme {
  int n_intervals = 8;

  std::vector<double> breakpoints(double lo, double hi) const;
};

BoundValue lb_r1_theorem1(double r, const ModelParams& params,
                          double rel_tol = 1e-10, double abs_tol = 1e-14);
BoundValue lb_r1_closed_form(double r, const ModelParams& params,
                             const PartitionScheme& partition);
BoundValue lb_r2_theorem2(double r, const ModelParams& params,
                          double rel_tol = 1e-10, double abs_tol = 1e-14);
BoundValue ub_ppp(double r, double lambda2);
BoundValue ub_r2_ppp(double r, const ModelParams& params);
BoundValue approx_equiv(double r, const ModelParams& params);

}  // namespace php
