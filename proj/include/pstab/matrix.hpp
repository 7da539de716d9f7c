#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pstab {

// Dense row-major matrix of doubles. Holds datasets (n x d), 2D embeddings
// (n x 2) and perturbation clouds. All numeric code in this project runs in
// 64-bit floats with fixed reduction orders.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), values(r * c, fill) {}
  Matrix(std::size_t r, std::size_t c, std::vector<double> v);

  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

  std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols, cols};
  }

  bool all_finite() const;
  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }
};

Matrix transpose(const Matrix& a);

// c = a * b, deterministic i-k-j loop order.
Matrix matmul(const Matrix& a, const Matrix& b);

// out += scale * a^T * b. a is (n x m), b is (n x p), out is (m x p).
void add_atb_scaled(const Matrix& a, const Matrix& b, double scale, Matrix& out);

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace pstab
