#include "php/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace php {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void ModelParams::validate() const {
  require(finite_nonneg(lambda1), "ModelParams.lambda1 must be finite and >= 0");
  require(finite_nonneg(lambda2), "ModelParams.lambda2 must be finite and >= 0");
  require(finite_nonneg(d_hole), "ModelParams.d_hole must be finite and >= 0");
}

void SimWindow::validate(double d_hole) const {
  require(std::isfinite(radius) && radius > 0.0, "SimWindow.radius must be finite and > 0");
  require(std::isfinite(hole_margin) && hole_margin >= d_hole,
          "SimWindow.hole_margin must be >= d_hole");
}

std::vector<Point> sample_annulus(double intensity, double r_inner, double r_outer,
                                  SplitMix64& rng) {
  require(finite_nonneg(intensity), "sample intensity must be finite and >= 0");
  require(r_inner >= 0.0 && r_outer >= r_inner, "annulus radii must satisfy 0 <= r_inner <= r_outer");
  const double area = kPi * (r_outer * r_outer - r_inner * r_inner);
  const long count = poisson_sample(intensity * area, rng);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const double in2 = r_inner * r_inner;
  const double out2 = r_outer * r_outer;
  for (long i = 0; i < count; ++i) {
    // Uniform area measure: radius via inverse CDF, angle uniform.
    const double r = std::sqrt(in2 + rng.next_double() * (out2 - in2));
    const double phi = 2.0 * kPi * rng.next_double();
    pts.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  return pts;
}

std::vector<Point> sample_disk(double intensity, double radius, SplitMix64& rng) {
  return sample_annulus(intensity, 0.0, radius, rng);
}

PointSet sample_ppp(double intensity, const DiskWindow& window, std::uint64_t seed) {
  require(std::isfinite(window.radius) && window.radius >= 0.0,
          "sample window radius must be finite and >= 0");
  SplitMix64 rng(seed);
  PointSet set;
  set.window = window;
  set.points = sample_disk(intensity, window.radius, rng);
  for (Point& p : set.points) {
    p.x += window.center.x;
    p.y += window.center.y;
  }
  return set;
}

PointSet build_php(const PointSet& baseline, const PointSet& holes, double d_hole) {
  require(finite_nonneg(d_hole), "d_hole must be finite and >= 0");
  const double d2 = d_hole * d_hole;
  PointSet out;
  out.window = baseline.window;
  out.points.reserve(baseline.points.size());
  for (const Point& x : baseline.points) {
    bool survives = true;
    for (const Point& y : holes.points) {
      if (squared_distance(x, y) <= d2) {
        survives = false;
        break;
      }
    }
    if (survives) out.points.push_back(x);
  }
  return out;
}

std::optional<double> nearest_distance(const PointSet& set, const Point& origin) {
  if (set.points.empty()) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const Point& p : set.points) {
    best = std::min(best, squared_distance(p, origin));
  }
  return std::sqrt(best);
}

}  // namespace php
