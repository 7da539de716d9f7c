#pragma once

#include <cmath>

namespace pstab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_point_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double point_distance(Point a, Point b) {
  return std::sqrt(squared_point_distance(a, b));
}

}  // namespace pstab
