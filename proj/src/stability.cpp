#include "pstab/stability.hpp"

#include <cmath>
#include <string>

#include "pstab/error.hpp"

namespace pstab {

namespace {

void check_cloud(const Matrix& cloud) {
  if (cloud.rows < 1 || cloud.cols != 2) {
    fail_data("validation error: projected cloud must be non-empty with 2 columns");
  }
}

}  // namespace

double mean_displacement(Point z0, const Matrix& cloud_proj) {
  check_cloud(cloud_proj);
  double sum = 0.0;
  for (std::size_t i = 0; i < cloud_proj.rows; ++i) {
    sum += point_distance({cloud_proj.at(i, 0), cloud_proj.at(i, 1)}, z0);
  }
  return sum / static_cast<double>(cloud_proj.rows);
}

// Sums displacement vectors rather than averaging raw points so a cloud
// collapsed onto the anchor yields exactly zero bias.
double displacement_bias(Point z0, const Matrix& cloud_proj) {
  check_cloud(cloud_proj);
  double dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < cloud_proj.rows; ++i) {
    dx += cloud_proj.at(i, 0) - z0.x;
    dy += cloud_proj.at(i, 1) - z0.y;
  }
  const auto n = static_cast<double>(cloud_proj.rows);
  return std::sqrt((dx / n) * (dx / n) + (dy / n) * (dy / n));
}

std::size_t nearest_anchor(Point z, const std::vector<Point>& anchors) {
  std::size_t best = 0;
  double best_sq = squared_point_distance(z, anchors[0]);
  for (std::size_t k = 1; k < anchors.size(); ++k) {
    const double sq = squared_point_distance(z, anchors[k]);
    if (sq < best_sq) {
      best_sq = sq;
      best = k;
    }
  }
  return best;
}

StabilitySummary compute_stability(const std::vector<Point>& anchor_proj,
                                   const std::vector<Matrix>& cloud_proj) {
  if (anchor_proj.empty()) {
    fail_data("validation error: no anchors to evaluate");
  }
  if (anchor_proj.size() != cloud_proj.size()) {
    fail_data("validation error: anchor and cloud counts disagree");
  }
  for (std::size_t a = 0; a < anchor_proj.size(); ++a) {
    for (std::size_t b = a + 1; b < anchor_proj.size(); ++b) {
      if (anchor_proj[a].x == anchor_proj[b].x &&
          anchor_proj[a].y == anchor_proj[b].y) {
        fail_data("metric error: anchors " + std::to_string(a) + " and " +
                  std::to_string(b) +
                  " project to the same location (Voronoi undefined)");
      }
    }
  }

  StabilitySummary summary;
  summary.anchors.reserve(anchor_proj.size());
  double rate_sum = 0.0;
  for (std::size_t a = 0; a < anchor_proj.size(); ++a) {
    const Matrix& cloud = cloud_proj[a];
    check_cloud(cloud);
    AnchorStability entry;
    entry.anchor = a;
    entry.d_dev = mean_displacement(anchor_proj[a], cloud);
    entry.d_bias = displacement_bias(anchor_proj[a], cloud);
    entry.assignment.resize(cloud.rows);
    std::size_t missed = 0;
    for (std::size_t i = 0; i < cloud.rows; ++i) {
      const std::size_t hit =
          nearest_anchor({cloud.at(i, 0), cloud.at(i, 1)}, anchor_proj);
      entry.assignment[i] = hit;
      if (hit != a) ++missed;
    }
    entry.misassignment_rate =
        static_cast<double>(missed) / static_cast<double>(cloud.rows);
    rate_sum += entry.misassignment_rate;
    summary.anchors.push_back(std::move(entry));
  }
  summary.e_na = rate_sum / static_cast<double>(anchor_proj.size());
  return summary;
}

}  // namespace pstab
