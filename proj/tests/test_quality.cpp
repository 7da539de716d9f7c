#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pstab/error.hpp"
#include "pstab/matrix.hpp"
#include "pstab/quality.hpp"
#include "support/oracles.hpp"

using pstab::Matrix;
using pstab::RankTable;

namespace {

double sqdist(const Matrix& pts, std::size_t i, std::size_t j) {
  double sum = 0.0;
  for (std::size_t c = 0; c < pts.cols; ++c) {
    const double d = pts.at(i, c) - pts.at(j, c);
    sum += d * d;
  }
  return sum;
}

// Rank of j among i's neighbors by counting, not sorting.
std::size_t count_rank(const Matrix& pts, std::size_t i, std::size_t j) {
  const double dj = sqdist(pts, i, j);
  std::size_t rank = 1;
  for (std::size_t l = 0; l < pts.rows; ++l) {
    if (l == i || l == j) continue;
    const double dl = sqdist(pts, i, l);
    if (dl < dj || (dl == dj && l < j)) ++rank;
  }
  return rank;
}

// Direct double-loop evaluation over all ordered pairs, with neighborhood
// membership decided by count_rank rather than a rank table.
double oracle_trust(const Matrix& high, const Matrix& low, std::size_t k) {
  const std::size_t n = high.rows;
  double penalty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (count_rank(low, i, j) > k) continue;  // not in the projection k-NN
      const std::size_t r = count_rank(high, i, j);
      if (r > k) penalty += static_cast<double>(r - k);
    }
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return 1.0 - 2.0 / (nn * kk * (2.0 * nn - 3.0 * kk - 1.0)) * penalty;
}

double oracle_cont(const Matrix& high, const Matrix& low, std::size_t k) {
  const std::size_t n = high.rows;
  double penalty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (count_rank(high, i, j) > k) continue;  // not an original-space neighbor
      const std::size_t r = count_rank(low, i, j);
      if (r > k) penalty += static_cast<double>(r - k);
    }
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return 1.0 - 2.0 / (nn * kk * (2.0 * nn - 3.0 * kk - 1.0)) * penalty;
}

Matrix random_points(std::mt19937_64& gen, std::size_t n, std::size_t d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(n, d);
  for (double& v : m.values) v = dist(gen);
  return m;
}

}  // namespace

TEST_CASE("ranking of collinear points") {
  Matrix pts(3, 1, {0.0, 1.0, 3.0});
  const RankTable table = pstab::knn_ranks(pts);
  CHECK(table.size() == 3);
  CHECK(table.rank_of(0, 1) == 1);
  CHECK(table.rank_of(0, 2) == 2);
  CHECK(table.neighbor(0, 0) == 1);
  CHECK(table.neighbor(0, 1) == 2);
  CHECK(table.rank_of(1, 0) == 1);
  CHECK(table.rank_of(1, 2) == 2);
  CHECK(table.rank_of(2, 1) == 1);
  CHECK(table.rank_of(2, 0) == 2);
}

TEST_CASE("distance ties rank the smaller index first") {
  Matrix pts(4, 2, {0, 0, 2, 0, -2, 0, 1, 1});
  const RankTable table = pstab::knn_ranks(pts);
  CHECK(table.neighbor(0, 0) == 3);
  CHECK(table.neighbor(0, 1) == 1);
  CHECK(table.neighbor(0, 2) == 2);
  CHECK(table.rank_of(0, 1) == 2);
  CHECK(table.rank_of(0, 2) == 3);
}

TEST_CASE("rank table matches the counting oracle") {
  std::mt19937_64 gen(404);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + gen() % 8;
    const Matrix pts = random_points(gen, n, 3);
    const RankTable table = pstab::knn_ranks(pts);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<bool> seen(n, false);
      for (std::size_t t = 0; t + 1 < n; ++t) {
        const std::size_t j = table.neighbor(i, t);
        CHECK(j != i);
        CHECK(!seen[j]);
        seen[j] = true;
        CHECK(table.rank_of(i, j) == t + 1);
        CHECK(count_rank(pts, i, j) == t + 1);
      }
    }
  }
}

TEST_CASE("identity projection scores one exactly") {
  std::mt19937_64 gen(11);
  const Matrix pts = random_points(gen, 12, 2);
  const RankTable table = pstab::knn_ranks(pts);
  for (std::size_t k = 1; 2 * k < 12; ++k) {
    CHECK(pstab::trustworthiness(table, table, k) == 1.0);
    CHECK(pstab::continuity(table, table, k) == 1.0);
  }
  const pstab::TcResult tc = pstab::averaged_tc(pts, pts);
  CHECK(tc.t_avg == 1.0);
  CHECK(tc.c_avg == 1.0);
}

TEST_CASE("matches brute force on a swapped-pair instance") {
  Matrix high(8, 1, {0, 1, 2, 3, 4, 5, 6, 7});
  Matrix low(8, 1, {0, 1, 5, 3, 4, 2, 6, 7});
  const RankTable ht = pstab::knn_ranks(high);
  const RankTable lt = pstab::knn_ranks(low);
  for (std::size_t k = 1; 2 * k < 8; ++k) {
    const double t = pstab::trustworthiness(ht, lt, k);
    const double c = pstab::continuity(ht, lt, k);
    CHECK(std::abs(t - oracle_trust(high, low, k)) < 1e-12);
    CHECK(std::abs(c - oracle_cont(high, low, k)) < 1e-12);
    CHECK(t < 1.0);
  }
}

TEST_CASE("matches brute force on random instances") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + gen() % 10;
    const Matrix high = random_points(gen, n, 4);
    const Matrix low = random_points(gen, n, 2);
    const RankTable ht = pstab::knn_ranks(high);
    const RankTable lt = pstab::knn_ranks(low);
    for (std::size_t k = 1; 2 * k < n; ++k) {
      const double t = pstab::trustworthiness(ht, lt, k);
      const double c = pstab::continuity(ht, lt, k);
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      CHECK(std::abs(t - oracle_trust(high, low, k)) < 1e-12);
      CHECK(std::abs(c - oracle_cont(high, low, k)) < 1e-12);
    }
  }
}

TEST_CASE("continuity is trustworthiness with the spaces swapped") {
  std::mt19937_64 gen(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + gen() % 8;
    const Matrix high = random_points(gen, n, 3);
    const Matrix low = random_points(gen, n, 2);
    const RankTable ht = pstab::knn_ranks(high);
    const RankTable lt = pstab::knn_ranks(low);
    for (std::size_t k = 1; 2 * k < n; ++k) {
      CHECK(pstab::continuity(ht, lt, k) == pstab::trustworthiness(lt, ht, k));
      CHECK(std::abs(oracle_cont(high, low, k) - oracle_trust(low, high, k)) < 1e-15);
    }
  }
}

TEST_CASE("k sequence doubles while below n/2") {
  std::mt19937_64 gen(8);
  auto ks_for = [&](std::size_t n) {
    const Matrix high = random_points(gen, n, 3);
    const Matrix low = random_points(gen, n, 2);
    return pstab::averaged_tc(high, low).ks;
  };
  CHECK(ks_for(10) == std::vector<std::size_t>{2, 4});
  CHECK(ks_for(8) == std::vector<std::size_t>{2});
  CHECK(ks_for(5) == std::vector<std::size_t>{2});
  CHECK(ks_for(20) == std::vector<std::size_t>{2, 4, 8});
}

TEST_CASE("averaged values are the mean of the per-k values") {
  std::mt19937_64 gen(21);
  const Matrix high = random_points(gen, 20, 5);
  const Matrix low = random_points(gen, 20, 2);
  const pstab::TcResult tc = pstab::averaged_tc(high, low);
  REQUIRE(tc.ks == std::vector<std::size_t>{2, 4, 8});
  double t_sum = 0.0;
  double c_sum = 0.0;
  for (std::size_t idx = 0; idx < tc.ks.size(); ++idx) {
    const double t_here = oracle_trust(high, low, tc.ks[idx]);
    const double c_here = oracle_cont(high, low, tc.ks[idx]);
    CHECK(std::abs(tc.t_values[idx] - t_here) < 1e-12);
    CHECK(std::abs(tc.c_values[idx] - c_here) < 1e-12);
    t_sum += tc.t_values[idx];
    c_sum += tc.c_values[idx];
  }
  CHECK(tc.t_avg == t_sum / 3.0);
  CHECK(tc.c_avg == c_sum / 3.0);
}

TEST_CASE("rejects bad inputs") {
  std::mt19937_64 gen(3);
  const Matrix pts = random_points(gen, 10, 2);
  const RankTable table = pstab::knn_ranks(pts);
  CHECK_THROWS_AS(pstab::trustworthiness(table, table, 0), pstab::Error);
  CHECK_THROWS_AS(pstab::trustworthiness(table, table, 5), pstab::Error);
  CHECK_NOTHROW(pstab::trustworthiness(table, table, 4));

  const RankTable other = pstab::knn_ranks(random_points(gen, 8, 2));
  CHECK_THROWS_AS(pstab::trustworthiness(table, other, 2), pstab::Error);

  Matrix tiny(2, 1, {0.0, 1.0});
  CHECK_THROWS_AS(pstab::knn_ranks(tiny), pstab::Error);

  const Matrix four = random_points(gen, 4, 2);
  CHECK_THROWS_AS(pstab::averaged_tc(four, four), pstab::Error);
  const Matrix five_high = random_points(gen, 5, 3);
  const Matrix six_low = random_points(gen, 6, 2);
  CHECK_THROWS_AS(pstab::averaged_tc(five_high, six_low), pstab::Error);
}
