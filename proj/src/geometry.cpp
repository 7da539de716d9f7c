#include "pstab/geometry.hpp"

#include <cmath>
#include <string>

#include "pstab/error.hpp"

namespace pstab {

namespace {

void check_cloud_shape(const Matrix& cloud) {
  if (cloud.cols != 2) {
    fail_data("diagnostics error: expected a two-column cloud, got " +
              std::to_string(cloud.cols) + " columns");
  }
}

}  // namespace

EllipseParams pca_ellipse(const Matrix& cloud_proj, double scale) {
  check_cloud_shape(cloud_proj);
  const std::size_t n = cloud_proj.rows;
  if (n < 3) {
    fail_data("diagnostics error: PCA ellipse needs at least 3 points, got " +
              std::to_string(n));
  }
  if (!(scale > 0.0)) {
    fail_data("diagnostics error: ellipse scale must be positive");
  }

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += cloud_proj.at(i, 0);
    mean_y += cloud_proj.at(i, 1);
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = cloud_proj.at(i, 0) - mean_x;
    const double dy = cloud_proj.at(i, 1) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double denom = static_cast<double>(n - 1);
  sxx /= denom;
  sxy /= denom;
  syy /= denom;

  EllipseParams out;
  out.center = Point{mean_x, mean_y};

  const double half_gap = 0.5 * (sxx - syy);
  const double disc = std::sqrt(half_gap * half_gap + sxy * sxy);
  const double mid = 0.5 * (sxx + syy);
  double lam_max = mid + disc;
  double lam_min = mid - disc;
  if (lam_max < 0.0) lam_max = 0.0;  // covariance is PSD up to rounding
  if (lam_min < 0.0) lam_min = 0.0;

  if (sxy == 0.0 && sxx == syy) {
    out.major_axis = Point{1.0, 0.0};
    out.minor_axis = Point{0.0, 1.0};
  } else if (sxy == 0.0) {
    if (sxx >= syy) {
      out.major_axis = Point{1.0, 0.0};
      out.minor_axis = Point{0.0, 1.0};
    } else {
      out.major_axis = Point{0.0, 1.0};
      out.minor_axis = Point{-1.0, 0.0};
    }
  } else {
    // (lam_max - syy, sxy) solves (C - lam I) v = 0; nonzero because sxy != 0.
    Point v{lam_max - syy, sxy};
    const double norm = std::sqrt(v.x * v.x + v.y * v.y);
    v.x /= norm;
    v.y /= norm;
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) {
      v.x = -v.x;
      v.y = -v.y;
    }
    out.major_axis = v;
    out.minor_axis = Point{-v.y, v.x};
  }

  out.major_len = scale * std::sqrt(lam_max);
  out.minor_len = scale * std::sqrt(lam_min);
  return out;
}

double polygon_area(const Polygon& poly) {
  const std::size_t n = poly.vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly.vertices[i];
    const Point& b = poly.vertices[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

bool point_in_convex_polygon(Point p, const Polygon& poly, double tol) {
  const std::size_t n = poly.vertices.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly.vertices[i];
    const Point& b = poly.vertices[(i + 1) % n];
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double len = std::sqrt(ex * ex + ey * ey);
    if (len == 0.0) continue;
    const double cross = ex * (p.y - a.y) - ey * (p.x - a.x);
    if (cross / len < -tol) return false;
  }
  return true;
}

namespace {

// Keep the part of a convex polygon with nx*x + ny*y <= c (Sutherland-Hodgman
// against a single half-plane).
Polygon clip_half_plane(const Polygon& poly, double nx, double ny, double c) {
  Polygon out;
  const std::size_t n = poly.vertices.size();
  if (n == 0) return out;
  out.vertices.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = poly.vertices[i];
    const Point& nxt = poly.vertices[(i + 1) % n];
    const double side_cur = nx * cur.x + ny * cur.y - c;
    const double side_nxt = nx * nxt.x + ny * nxt.y - c;
    if (side_cur <= 0.0) out.vertices.push_back(cur);
    if ((side_cur < 0.0 && side_nxt > 0.0) || (side_cur > 0.0 && side_nxt < 0.0)) {
      const double t = side_cur / (side_cur - side_nxt);
      out.vertices.push_back(Point{cur.x + t * (nxt.x - cur.x),
                                   cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

}  // namespace

std::vector<Polygon> voronoi_cells(const std::vector<Point>& anchors, Rect box) {
  if (anchors.empty()) {
    fail_data("diagnostics error: no anchors for the Voronoi partition");
  }
  if (!(box.max_x > box.min_x) || !(box.max_y > box.min_y)) {
    fail_data("diagnostics error: degenerate view box");
  }
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    for (std::size_t b = a + 1; b < anchors.size(); ++b) {
      if (anchors[a].x == anchors[b].x && anchors[a].y == anchors[b].y) {
        fail_data("diagnostics error: anchors " + std::to_string(a) + " and " +
                  std::to_string(b) + " coincide, Voronoi cells undefined");
      }
    }
  }
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    if (!box.contains(anchors[a])) {
      fail_data("diagnostics error: anchor " + std::to_string(a) +
                " lies outside the view box");
    }
  }

  Polygon boxpoly;
  boxpoly.vertices = {Point{box.min_x, box.min_y}, Point{box.max_x, box.min_y},
                      Point{box.max_x, box.max_y}, Point{box.min_x, box.max_y}};

  std::vector<Polygon> cells;
  cells.reserve(anchors.size());
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    Polygon cell = boxpoly;
    for (std::size_t b = 0; b < anchors.size() && !cell.vertices.empty(); ++b) {
      if (b == a) continue;
      // ||z - a|| <= ||z - b||  <=>  2 (b - a) . z <= |b|^2 - |a|^2
      const double nx = 2.0 * (anchors[b].x - anchors[a].x);
      const double ny = 2.0 * (anchors[b].y - anchors[a].y);
      const double c = anchors[b].x * anchors[b].x + anchors[b].y * anchors[b].y -
                       anchors[a].x * anchors[a].x - anchors[a].y * anchors[a].y;
      cell = clip_half_plane(cell, nx, ny, c);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace pstab
