#pragma once

#include <vector>

#include "pstab/matrix.hpp"
#include "pstab/point.hpp"

namespace pstab {

struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 1.0;
  double max_y = 1.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  bool contains(Point p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

// Covariance ellipse of a 2D cloud. Axes are orthonormal, major first;
// semi-axis lengths are scale * sqrt(eigenvalue) of the sample covariance.
struct EllipseParams {
  Point center{0.0, 0.0};
  Point major_axis{1.0, 0.0};
  Point minor_axis{0.0, 1.0};
  double major_len = 0.0;
  double minor_len = 0.0;
};

// Closed-form eigen-decomposition of the 2x2 sample covariance (denominator
// N-1). Equal eigenvalues pin the axes to (1,0) and (0,1).
EllipseParams pca_ellipse(const Matrix& cloud_proj, double scale);

// Convex polygon, counterclockwise vertex order. Empty when fully clipped.
struct Polygon {
  std::vector<Point> vertices;
};

// Shoelace area, positive for counterclockwise vertex order.
double polygon_area(const Polygon& poly);

// True when p lies inside or within tol (perpendicular distance) of the
// boundary of a counterclockwise convex polygon.
bool point_in_convex_polygon(Point p, const Polygon& poly, double tol);

// Voronoi cell per anchor: the box intersected with every bisector half-plane
// against the other anchors, by iterative convex clipping.
std::vector<Polygon> voronoi_cells(const std::vector<Point>& anchors, Rect box);

}  // namespace pstab
