#pragma once

#include <cstdint>
#include <span>

#include "pstab/matrix.hpp"

namespace pstab {

// Perturbation parameters. The input-space radius r and the per-coordinate
// standard deviation are locked together by sigma = r / sqrt(d).
struct NoiseSpec {
  double r = 0.0;
  double sigma = 0.0;
  std::size_t dim = 0;
  double percentile = 0.25;
  bool clip = false;
  double clip_low = 0.0;
  double clip_high = 1.0;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;

  static NoiseSpec from_radius(double r, std::size_t dim);
  static NoiseSpec from_sigma(double sigma, std::size_t dim);
  void validate() const;
};

// Percentile (linear interpolation between order statistics) of the pairwise
// Euclidean distances. All n(n-1)/2 pairs when they fit in pair_budget,
// otherwise pair_budget uniformly sampled index pairs (i != j, seeded).
double pairwise_distance_percentile(const Matrix& data, double p,
                                    std::size_t pair_budget, std::uint64_t seed);

double sigma_from_radius(double r, std::size_t dim);

struct PerturbationCloud {
  std::size_t anchor_index = 0;
  Matrix samples;      // N x d, clipped
  Matrix projections;  // N x 2, filled by the caller after projecting
  double r_eff = 0.0;
};

// N draws of x0 + eps with eps ~ N(0, sigma^2 I), element-wise clipped when
// the spec asks for it. Sample i is a pure function of (spec.seed,
// anchor_index, i).
PerturbationCloud perturb_samples(std::span<const double> x0,
                                  std::size_t anchor_index, const NoiseSpec& spec);

// Root-mean-square displacement of the cloud from its anchor.
double effective_radius(const Matrix& samples, std::span<const double> x0);

}  // namespace pstab
