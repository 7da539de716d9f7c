#include "pstab/quality.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "pstab/error.hpp"

namespace pstab {

namespace {

void check_k_range(std::size_t k, std::size_t n) {
  if (k < 1 || 2 * k >= n) {
    fail_data("metric error: neighborhood size k=" + std::to_string(k) +
              " out of range for n=" + std::to_string(n) + ", need 1 <= k < n/2");
  }
}

}  // namespace

RankTable knn_ranks(const Matrix& points) {
  const std::size_t n = points.rows;
  if (n < 3) {
    fail_data("metric error: neighbor ranking needs at least 3 points, got " +
              std::to_string(n));
  }
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    fail_data("metric error: too many points for the rank table");
  }

  RankTable table;
  table.count = n;
  table.order.resize(n * (n - 1));
  table.ranks.assign(n * n, 0);

  // Pair ordering is (distance, index), which is exactly the tie rule.
  std::vector<std::pair<double, std::uint32_t>> by_distance(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t slot = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      by_distance[slot++] = {squared_distance(points.row(i), points.row(j)),
                             static_cast<std::uint32_t>(j)};
    }
    std::sort(by_distance.begin(), by_distance.end());
    for (std::size_t t = 0; t < n - 1; ++t) {
      const std::uint32_t j = by_distance[t].second;
      table.order[i * (n - 1) + t] = j;
      table.ranks[i * n + j] = static_cast<std::uint32_t>(t + 1);
    }
  }
  return table;
}

double trustworthiness(const RankTable& high, const RankTable& low, std::size_t k) {
  if (high.count != low.count) {
    fail_data("metric error: rank tables disagree on point count, " +
              std::to_string(high.count) + " vs " + std::to_string(low.count));
  }
  const std::size_t n = high.count;
  check_k_range(k, n);

  double penalty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      const std::uint32_t j = low.neighbor(i, t);
      const double r = static_cast<double>(high.rank_of(i, j));
      if (r > static_cast<double>(k)) penalty += r - static_cast<double>(k);
    }
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return 1.0 - 2.0 / (nn * kk * (2.0 * nn - 3.0 * kk - 1.0)) * penalty;
}

double continuity(const RankTable& high, const RankTable& low, std::size_t k) {
  return trustworthiness(low, high, k);
}

TcResult averaged_tc(const Matrix& high, const Matrix& low) {
  if (high.rows != low.rows) {
    fail_data("metric error: spaces hold different point counts, " +
              std::to_string(high.rows) + " vs " + std::to_string(low.rows));
  }
  const std::size_t n = high.rows;
  if (n < 5) {
    fail_data("metric error: need at least 5 points for the k sequence, got " +
              std::to_string(n));
  }

  const RankTable high_ranks = knn_ranks(high);
  const RankTable low_ranks = knn_ranks(low);

  TcResult result;
  double t_sum = 0.0;
  double c_sum = 0.0;
  for (std::size_t k = 2; 2 * k < n; k *= 2) {
    const double t = trustworthiness(high_ranks, low_ranks, k);
    const double c = continuity(high_ranks, low_ranks, k);
    result.ks.push_back(k);
    result.t_values.push_back(t);
    result.c_values.push_back(c);
    t_sum += t;
    c_sum += c;
  }
  result.t_avg = t_sum / static_cast<double>(result.ks.size());
  result.c_avg = c_sum / static_cast<double>(result.ks.size());
  return result;
}

}  // namespace pstab
