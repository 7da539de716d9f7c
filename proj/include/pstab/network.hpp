#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pstab/matrix.hpp"

namespace pstab {

// One affine layer: weight is (out x in), row-major.
struct Layer {
  Matrix weight;
  std::vector<double> bias;
};

// Dense feed-forward projector R^d -> R^2. ReLU on hidden layers, identity on
// the output layer. The derivative of ReLU at exactly 0 is taken as 0.
struct Network {
  std::vector<Layer> layers;

  std::size_t input_width() const { return layers.front().weight.cols; }
  std::size_t output_width() const { return layers.back().weight.rows; }
  std::vector<std::size_t> widths() const;
  std::size_t parameter_count() const;
  bool all_finite() const;
};

// He-style init: weights ~ N(0, 2/fan_in), biases zero. Fully determined by
// the seed. widths lists every layer width including input and output, the
// output width must be 2.
Network init_network(const std::vector<std::size_t>& widths, std::uint64_t seed);

std::vector<std::size_t> preset_widths(const std::string& preset, std::size_t input_dim);

Matrix forward(const Network& net, const Matrix& batch);

// Exact input-output Jacobian at x, shape (output_width x d). One reverse
// pass per output coordinate; exact for the piecewise-linear network.
Matrix jacobian(const Network& net, std::span<const double> x);

// Mean over batch rows of ||J_f(x)||_F^2.
double jacobian_frobenius_sq(const Network& net, const Matrix& batch);

struct Gradients {
  std::vector<Layer> layers;  // same shapes as the network parameters
  double loss = 0.0;
};

// Gradients of mean-over-batch squared error (summed over output coords)
// plus lambda * mean-over-batch ||J_f||_F^2. Returns the loss value as well.
Gradients param_gradients(const Network& net, const Matrix& batch,
                          const Matrix& targets, double lambda);

}  // namespace pstab
