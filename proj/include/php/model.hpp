#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "php/geometry.hpp"
#include "php/rng.hpp"

namespace php {

// Process parameters, canonical units: densities in points per m^2,
// lengths in meters. lambda1/d_hole describe the hole process (centers and
// exclusion radius), lambda2 the baseline process being thinned.
struct ModelParams {
  double lambda1 = 0.0;  // hole-center density [1/m^2]
  double lambda2 = 0.0;  // baseline density    [1/m^2]
  double d_hole = 0.0;   // hole radius D       [m]

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Simulation window: baseline points are sampled on a disk of `radius`
// around the reference point; hole centers on a disk of radius
// `radius + hole_margin` so that every hole able to cover a baseline point
// inside the window is present. Invariant: hole_margin >= d_hole.
struct SimWindow {
  double radius = 0.0;       // [m]
  double hole_margin = 0.0;  // [m]

  void validate(double d_hole) const;
};

struct PointSet {
  std::vector<Point> points;
  DiskWindow window;
};

// Homogeneous PPP on a disk window: Poisson count, then i.i.d. uniform
// placement (inverse-CDF radial sampling). Deterministic in (intensity,
// window, seed).
PointSet sample_ppp(double intensity, const DiskWindow& window, std::uint64_t seed);

// Stream-threaded primitives used by the trial loop (one RNG per trial).
// Points are centered on the origin.
std::vector<Point> sample_disk(double intensity, double radius, SplitMix64& rng);
std::vector<Point> sample_annulus(double intensity, double r_inner, double r_outer,
                                  SplitMix64& rng);

// Carve the holes out of the baseline set: keep x with |x - y| > d_hole for
// every hole center y (closed-ball exclusion). Output keeps the baseline
// window.
PointSet build_php(const PointSet& baseline, const PointSet& holes, double d_hole);

// Distance from `origin` to the nearest point of the set; empty -> nullopt.
std::optional<double> nearest_distance(const PointSet& set, const Point& origin);

}  // namespace php
