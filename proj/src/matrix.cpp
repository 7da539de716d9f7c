#include "pstab/matrix.hpp"

#include <cmath>
#include <utility>

#include "pstab/error.hpp"

namespace pstab {

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> v)
    : rows(r), cols(c), values(std::move(v)) {
  if (values.size() != rows * cols) {
    fail_data("matrix: value count " + std::to_string(values.size()) +
              " does not match shape " + std::to_string(rows) + "x" +
              std::to_string(cols));
  }
}

bool Matrix::all_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      out.values[j * a.rows + i] = a.values[i * a.cols + j];
    }
  }
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) {
    fail_data("matmul: inner dimensions disagree (" + std::to_string(a.cols) +
              " vs " + std::to_string(b.rows) + ")");
  }
  Matrix out(a.rows, b.cols, 0.0);
  const std::size_t m = a.cols;
  const std::size_t p = b.cols;
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.values.data() + i * m;
    double* orow = out.values.data() + i * p;
    for (std::size_t k = 0; k < m; ++k) {
      const double aik = arow[k];
      const double* brow = b.values.data() + k * p;
      for (std::size_t j = 0; j < p; ++j) {
        orow[j] += aik * brow[j];
      }
    }
  }
  return out;
}

void add_atb_scaled(const Matrix& a, const Matrix& b, double scale, Matrix& out) {
  if (a.rows != b.rows || out.rows != a.cols || out.cols != b.cols) {
    fail_data("add_atb_scaled: shape mismatch");
  }
  const std::size_t m = a.cols;
  const std::size_t p = b.cols;
  for (std::size_t k = 0; k < a.rows; ++k) {
    const double* arow = a.values.data() + k * m;
    const double* brow = b.values.data() + k * p;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = scale * arow[i];
      double* orow = out.values.data() + i * p;
      for (std::size_t j = 0; j < p; ++j) {
        orow[j] += w * brow[j];
      }
    }
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace pstab
