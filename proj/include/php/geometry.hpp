#pragma once

#include <numbers>

namespace php {

inline constexpr double kPi = std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Circular sampling window. All lengths are meters.
struct DiskWindow {
  Point center{};
  double radius = 0.0;

  double area() const { return kPi * radius * radius; }
  bool contains(const Point& p) const {
    return squared_distance(center, p) <= radius * radius;
  }
};

}  // namespace php
