#pragma once

#include <cstddef>
#include <vector>

#include "pstab/matrix.hpp"
#include "pstab/point.hpp"

namespace pstab {

// Mean Euclidean displacement of the projected cloud from the anchor's own
// projection: (1/N) * sum ||z_i - z0||.
double mean_displacement(Point z0, const Matrix& cloud_proj);

// Norm of the mean displacement: ||(1/N) * sum (z_i - z0)||.
double displacement_bias(Point z0, const Matrix& cloud_proj);

// Index of the anchor nearest to z; distance ties go to the smaller index.
std::size_t nearest_anchor(Point z, const std::vector<Point>& anchors);

struct AnchorStability {
  std::size_t anchor = 0;
  double d_dev = 0.0;
  double d_bias = 0.0;
  double misassignment_rate = 0.0;
  std::vector<std::size_t> assignment;  // nearest-anchor id per cloud sample
};

struct StabilitySummary {
  std::vector<AnchorStability> anchors;
  double e_na = 0.0;  // mean misassignment rate over anchors
};

// Full per-anchor stability evaluation. anchor_proj[a] is the network's
// projection of anchor a's clean point; cloud_proj[a] holds the projected
// cloud (N_a x 2). Anchors must sit at pairwise-distinct locations.
StabilitySummary compute_stability(const std::vector<Point>& anchor_proj,
                                   const std::vector<Matrix>& cloud_proj);

}  // namespace pstab
