#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pstab/matrix.hpp"

namespace pstab {

// Exact brute-force neighbor ranking of every point against all others.
// order lists, per point, the other n-1 indices sorted by Euclidean distance
// (ties to the smaller index); ranks is the inverse lookup with
// rank_of(i, j) >= 1 for j != i. Diagonal entries are unused.
struct RankTable {
  std::size_t count = 0;
  std::vector<std::uint32_t> order;  // count rows of count-1 neighbor ids
  std::vector<std::uint32_t> ranks;  // count x count

  std::size_t size() const { return count; }

  std::uint32_t neighbor(std::size_t i, std::size_t t) const {
    return order[i * (count - 1) + t];
  }

  std::uint32_t rank_of(std::size_t i, std::size_t j) const {
    return ranks[i * count + j];
  }
};

RankTable knn_ranks(const Matrix& points);

// Venna-Kaski trustworthiness: penalizes intrusions, points inside the
// projection's k-neighborhood that are distant in the original space.
// T(k) = 1 - 2 / (n k (2n - 3k - 1)) * sum_i sum_{j in U_k(i)} (r_high(i,j) - k)
// with U_k(i) the k-NN of i in the projection minus the k-NN in the original.
double trustworthiness(const RankTable& high, const RankTable& low, std::size_t k);

// Mirror image with the spaces swapped: penalizes extrusions, original-space
// neighbors pushed out of the projection's k-neighborhood.
double continuity(const RankTable& high, const RankTable& low, std::size_t k);

struct TcResult {
  std::vector<std::size_t> ks;  // 2, 4, 8, ... while 2k < n
  std::vector<double> t_values;
  std::vector<double> c_values;
  double t_avg = 0.0;
  double c_avg = 0.0;
};

// T(k) and C(k) over the doubling k sequence plus their arithmetic means.
TcResult averaged_tc(const Matrix& high, const Matrix& low);

}  // namespace pstab
