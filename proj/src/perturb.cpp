#include "pstab/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pstab/error.hpp"
#include "pstab/rng.hpp"

namespace pstab {

NoiseSpec NoiseSpec::from_radius(double r, std::size_t dim) {
  NoiseSpec spec;
  spec.r = r;
  spec.dim = dim;
  spec.sigma = sigma_from_radius(r, dim);
  return spec;
}

NoiseSpec NoiseSpec::from_sigma(double sigma, std::size_t dim) {
  if (sigma < 0.0) fail_data("configuration error: sigma must be non-negative");
  if (dim < 1) fail_data("configuration error: dimension must be >= 1");
  NoiseSpec spec;
  spec.sigma = sigma;
  spec.dim = dim;
  spec.r = sigma * std::sqrt(static_cast<double>(dim));
  return spec;
}

void NoiseSpec::validate() const {
  if (dim < 1) fail_data("configuration error: noise dimension must be >= 1");
  if (sigma < 0.0 || r < 0.0) {
    fail_data("configuration error: noise scale must be non-negative");
  }
  const double derived = sigma * std::sqrt(static_cast<double>(dim));
  if (std::abs(derived - r) > 1e-12 * std::max(1.0, std::abs(r))) {
    fail_data("configuration error: sigma*sqrt(d) must equal r");
  }
  if (samples < 1) fail_data("configuration error: need at least one sample");
  if (clip && !(clip_low < clip_high)) {
    fail_data("configuration error: clip bounds must satisfy low < high");
  }
  if (percentile <= 0.0 || percentile >= 100.0) {
    fail_data("configuration error: percentile must lie in (0, 100)");
  }
}

double sigma_from_radius(double r, std::size_t dim) {
  if (r <= 0.0) fail_data("configuration error: radius must be positive");
  if (dim < 1) fail_data("configuration error: dimension must be >= 1");
  return r / std::sqrt(static_cast<double>(dim));
}

namespace {

// Linear interpolation between order statistics on sorted values:
// rank h = (m-1) * p / 100.
double interpolated_percentile(std::vector<double>& values, double p) {
  std::sort(values.begin(), values.end());
  const auto m = values.size();
  if (m == 1) return values[0];
  const double h = static_cast<double>(m - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= m) return values[m - 1];
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace

double pairwise_distance_percentile(const Matrix& data, double p,
                                    std::size_t pair_budget, std::uint64_t seed) {
  if (data.rows < 2) {
    fail_data("validation error: need at least 2 rows for pairwise distances");
  }
  if (p <= 0.0 || p >= 100.0) {
    fail_data("configuration error: percentile must lie in (0, 100)");
  }
  if (pair_budget < 1) fail_data("configuration error: pair budget must be >= 1");

  const std::size_t n = data.rows;
  std::vector<double> distances;
  const bool exhaustive =
      n <= 1 + 2 * pair_budget / n;  // n(n-1)/2 <= pair_budget without overflow
  if (exhaustive) {
    distances.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        distances.push_back(euclidean_distance(data.row(i), data.row(j)));
      }
    }
  } else {
    distances.reserve(pair_budget);
    RandomStream stream(stream_key(seed, StreamTag::pair_sample));
    for (std::size_t k = 0; k < pair_budget; ++k) {
      const auto i = static_cast<std::size_t>(stream.uniform_below(n));
      auto j = static_cast<std::size_t>(stream.uniform_below(n - 1));
      if (j >= i) ++j;
      distances.push_back(euclidean_distance(data.row(i), data.row(j)));
    }
  }

  const double value = interpolated_percentile(distances, p);
  if (value <= 0.0) {
    fail_data("degenerate data error: pairwise distance percentile is zero "
              "(coincident points)");
  }
  return value;
}

PerturbationCloud perturb_samples(std::span<const double> x0,
                                  std::size_t anchor_index, const NoiseSpec& spec) {
  spec.validate();
  if (x0.size() != spec.dim) {
    fail_data("validation error: anchor dimension " + std::to_string(x0.size()) +
              " does not match noise spec dimension " + std::to_string(spec.dim));
  }
  if (spec.clip) {
    for (double v : x0) {
      if (v < spec.clip_low || v > spec.clip_high) {
        fail_data("validation error: anchor coordinate outside clip bounds");
      }
    }
  }

  PerturbationCloud cloud;
  cloud.anchor_index = anchor_index;
  cloud.samples = Matrix(spec.samples, spec.dim);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    RandomStream stream(
        stream_key(spec.seed, StreamTag::perturb, anchor_index, i));
    double* row = cloud.samples.values.data() + i * spec.dim;
    for (std::size_t j = 0; j < spec.dim; ++j) {
      double v = x0[j] + spec.sigma * stream.normal();
      if (spec.clip) v = std::min(std::max(v, spec.clip_low), spec.clip_high);
      row[j] = v;
    }
  }
  cloud.r_eff = effective_radius(cloud.samples, x0);
  return cloud;
}

double effective_radius(const Matrix& samples, std::span<const double> x0) {
  if (samples.rows == 0) fail_data("validation error: empty perturbation cloud");
  if (samples.cols != x0.size()) {
    fail_data("validation error: cloud width does not match anchor dimension");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.rows; ++i) {
    sum += squared_distance(samples.row(i), x0);
  }
  return std::sqrt(sum / static_cast<double>(samples.rows));
}

}  // namespace pstab
