#include "php/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "php/quadrature.hpp"

namespace php {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_radius(double r) {
  require(std::isfinite(r) && r >= 0.0, "contact radius r must be finite and >= 0");
}

BoundValue make_bound(double raw, BoundKind kind) {
  if (std::isnan(raw)) throw std::runtime_error("bound evaluated to NaN");
  return {raw, std::min(1.0, std::max(0.0, raw)), kind};
}

// 1 - exp(-exponent) via expm1; correct limits for exponent -> +-inf and
// full precision near 0.
double one_minus_exp_neg(double exponent) { return -std::expm1(-exponent); }

// First term shared by g1 and its closed form: the contribution of hole
// centers closer than |r - D|, which obstruct a fixed disk cap.
double g1_near_term(double r, const ModelParams& p) {
  const double m = std::min(r, p.d_hole);
  const double gap = p.d_hole - r;
  return -std::expm1(p.lambda2 * kPi * m * m) * gap * gap / 2.0;
}

}  // namespace

double theta_angle(double r_y, double d_hole) {
  require(std::isfinite(r_y) && r_y >= 0.0, "theta_angle: r_y must be finite and >= 0");
  require(std::isfinite(d_hole) && d_hole >= 0.0,
          "theta_angle: d_hole must be finite and >= 0");
  require(r_y + d_hole > 0.0, "theta_angle: r_y and d_hole cannot both be 0");
  return std::asin(d_hole / (d_hole + r_y));
}

double h1(double r, double r_y, double d_hole) {
  require_radius(r);
  require(std::isfinite(d_hole) && d_hole >= 0.0, "h1: d_hole must be finite and >= 0");
  require(r_y >= std::abs(r - d_hole) && r_y <= r + d_hole,
          "h1: r_y must lie in [|r - D|, r + D]");
  const double area = (r + d_hole) * (r + d_hole) - r_y * r_y;
  if (area == 0.0) return 0.0;  // boundary; avoids theta_angle(0, 0) when r = D = 0
  return area * theta_angle(r_y, d_hole);
}

double h2(double r, double r_y, double d_hole) {
  require(std::isfinite(d_hole) && d_hole >= 0.0, "h2: d_hole must be finite and >= 0");
  require(std::isfinite(r) && r > d_hole, "h2: requires r > d_hole");
  require(r_y >= 0.0 && r_y <= r + d_hole, "h2: r_y must lie in [0, r + D]");
  const double outer = std::min(r + d_hole, r_y + 2.0 * d_hole);
  const double inner = std::max(r_y, 2.0 * d_hole);
  const double area = outer * outer - inner * inner;
  if (area <= 0.0) return 0.0;  // empty lens at the domain edges
  return area * theta_angle(r_y, d_hole);
}

double g1(double r, const ModelParams& params, double rel_tol, double abs_tol) {
  params.validate();
  require_radius(r);
  const double lo = std::abs(r - params.d_hole);
  const double hi = r + params.d_hole;
  const auto integrand = [&](double r_y) {
    return -std::expm1(params.lambda2 * h1(r, r_y, params.d_hole)) * r_y;
  };
  return g1_near_term(r, params) + integrate(integrand, lo, hi, rel_tol, abs_tol).value;
}

double g4(double r, const ModelParams& params, double rel_tol, double abs_tol) {
  params.validate();
  require(std::isfinite(r) && r > params.d_hole, "g4: requires r > d_hole");
  const double d = params.d_hole;
  const double hi = r + d;
  const auto integrand = [&](double r_y) {
    return -std::expm1(params.lambda2 * h2(r, r_y, d)) * r_y;
  };
  // h2 has slope kinks where its min/max arguments switch (r_y = r - D and
  // r_y = 2D); integrating each smooth piece separately keeps the Simpson
  // error extrapolation honest.
  std::vector<double> edges{0.0};
  for (double kink : {std::min(r - d, 2.0 * d), std::max(r - d, 2.0 * d)}) {
    if (kink > edges.back() && kink < hi) edges.push_back(kink);
  }
  edges.push_back(hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    total += integrate(integrand, edges[i], edges[i + 1], rel_tol, abs_tol).value;
  }
  return total;
}

double equivalent_density(const ModelParams& params) {
  params.validate();
  return params.lambda2 *
         std::exp(-params.lambda1 * kPi * params.d_hole * params.d_hole);
}

std::vector<double> PartitionScheme::breakpoints(double lo, double hi) const {
  if (n_intervals < 1) {
    throw std::invalid_argument("PartitionScheme: n_intervals must be >= 1");
  }
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) {
    throw std::invalid_argument("PartitionScheme: requires finite lo <= hi");
  }
  std::vector<double> edges(static_cast<std::size_t>(n_intervals) + 1);
  for (int i = 0; i <= n_intervals; ++i) {
    edges[static_cast<std::size_t>(i)] =
        (i == n_intervals)
            ? hi
            : lo + (hi - lo) * (static_cast<double>(i) / n_intervals);
  }
  return edges;
}

BoundValue lb_r1_theorem1(double r, const ModelParams& params, double rel_tol,
                          double abs_tol) {
  params.validate();
  require_radius(r);
  const double exponent = params.lambda2 * kPi * r * r +
                          2.0 * kPi * params.lambda1 * g1(r, params, rel_tol, abs_tol);
  return make_bound(one_minus_exp_neg(exponent), BoundKind::kLbR1Theorem1);
}

double g1_closed_form(double r, const ModelParams& params,
                      const PartitionScheme& partition) {
  params.validate();
  require_radius(r);
  const double lo = std::abs(r - params.d_hole);
  const double hi = r + params.d_hole;
  const double c = hi * hi;

  // Per sub-interval the decreasing theta(r_y) is frozen at its left-endpoint
  // maximum, which keeps the whole expression a valid lower bound and makes
  // the integral elementary:
  //   int_a^b (1 - exp(k*(c - r_y^2))) r_y dr_y
  //     = (b^2 - a^2)/2 - (exp(k*x1) - exp(k*x2)) / (2k),   x = c - r_y^2.
  double sum = g1_near_term(r, params);
  const std::vector<double> edges = partition.breakpoints(lo, hi);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    if (!(b > a)) continue;  // degenerate interval (r = 0 or D = 0)
    const double k = params.lambda2 * theta_angle(a, params.d_hole);
    const double x1 = c - a * a;
    const double x2 = c - b * b;
    const double width = (b * b - a * a) / 2.0;
    if (k < 1e-12) {
      // Series in k: avoids 0/0 when lambda2*theta vanishes.
      sum += width - ((x1 - x2) / 2.0 + k * (x1 * x1 - x2 * x2) / 4.0 +
                      k * k * (x1 * x1 * x1 - x2 * x2 * x2) / 12.0);
    } else {
      sum += width - (std::expm1(k * x1) - std::expm1(k * x2)) / (2.0 * k);
    }
  }
  return sum;
}

BoundValue lb_r1_closed_form(double r, const ModelParams& params,
                             const PartitionScheme& partition) {
  const double exponent =
      params.lambda2 * kPi * r * r +
      2.0 * kPi * params.lambda1 * g1_closed_form(r, params, partition);
  return make_bound(one_minus_exp_neg(exponent), BoundKind::kLbR1ClosedForm);
}

BoundValue lb_r2_theorem2(double r, const ModelParams& params, double rel_tol,
                          double abs_tol) {
  params.validate();
  require_radius(r);
  if (r <= params.d_hole) {
    // No baseline point can survive inside the reference hole.
    return make_bound(0.0, BoundKind::kLbR2Theorem2);
  }
  const double d2 = params.d_hole * params.d_hole;
  const double exponent = params.lambda2 * kPi * (r * r - d2) +
                          2.0 * kPi * params.lambda1 * g4(r, params, rel_tol, abs_tol);
  return make_bound(one_minus_exp_neg(exponent), BoundKind::kLbR2Theorem2);
}

BoundValue ub_ppp(double r, double lambda2) {
  require_radius(r);
  require(std::isfinite(lambda2) && lambda2 >= 0.0,
          "ub_ppp: lambda2 must be finite and >= 0");
  return make_bound(one_minus_exp_neg(lambda2 * kPi * r * r), BoundKind::kUbPpp);
}

BoundValue ub_r2_ppp(double r, const ModelParams& params) {
  params.validate();
  require_radius(r);
  if (r <= params.d_hole) return make_bound(0.0, BoundKind::kUbPpp);
  const double d2 = params.d_hole * params.d_hole;
  return make_bound(one_minus_exp_neg(params.lambda2 * kPi * (r * r - d2)),
                    BoundKind::kUbPpp);
}

BoundValue approx_equiv(double r, const ModelParams& params) {
  require_radius(r);
  return make_bound(one_minus_exp_neg(equivalent_density(params) * kPi * r * r),
                    BoundKind::kApproxEquiv);
}

}  // namespace php
