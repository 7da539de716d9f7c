#include "pstab/network.hpp"

#include <cmath>

#include "pstab/error.hpp"
#include "pstab/rng.hpp"

namespace pstab {

namespace {

// out = input * wt + bias, with wt the transposed weight (in x out).
Matrix affine(const Matrix& input, const Matrix& wt, const std::vector<double>& bias) {
  Matrix out = matmul(input, wt);
  for (std::size_t i = 0; i < out.rows; ++i) {
    double* row = out.values.data() + i * out.cols;
    for (std::size_t j = 0; j < out.cols; ++j) row[j] += bias[j];
  }
  return out;
}

void relu_inplace(Matrix& m) {
  for (double& v : m.values) {
    if (v <= 0.0) v = 0.0;
  }
}

// Zero entries of m where the matching activation is not strictly positive.
void mask_by_active(Matrix& m, const Matrix& activations) {
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    if (activations.values[i] <= 0.0) m.values[i] = 0.0;
  }
}

void check_input_width(const Network& net, std::size_t cols) {
  if (cols != net.input_width()) {
    fail_data("validation error: input width " + std::to_string(cols) +
              " does not match network input width " +
              std::to_string(net.input_width()));
  }
}

// Forward pass that keeps every layer activation; h[l] is the output of
// layer l (ReLU applied on all but the last layer).
std::vector<Matrix> forward_trace(const Network& net, const Matrix& batch,
                                  const std::vector<Matrix>& wt) {
  const std::size_t depth = net.layers.size();
  std::vector<Matrix> h(depth);
  const Matrix* cur = &batch;
  for (std::size_t l = 0; l < depth; ++l) {
    h[l] = affine(*cur, wt[l], net.layers[l].bias);
    if (l + 1 < depth) relu_inplace(h[l]);
    cur = &h[l];
  }
  return h;
}

std::vector<Matrix> transposed_weights(const Network& net) {
  std::vector<Matrix> wt;
  wt.reserve(net.layers.size());
  for (const Layer& layer : net.layers) wt.push_back(transpose(layer.weight));
  return wt;
}

// Reverse sensitivities of output coordinate r w.r.t. each pre-activation,
// batched over rows: delta[l] has shape (n x width_l).
std::vector<Matrix> output_sensitivities(const Network& net,
                                         const std::vector<Matrix>& h,
                                         std::size_t r, std::size_t n) {
  const std::size_t depth = net.layers.size();
  std::vector<Matrix> delta(depth);
  delta[depth - 1] = Matrix(n, net.output_width(), 0.0);
  for (std::size_t i = 0; i < n; ++i) delta[depth - 1].at(i, r) = 1.0;
  for (std::size_t l = depth - 1; l-- > 0;) {
    delta[l] = matmul(delta[l + 1], net.layers[l + 1].weight);
    mask_by_active(delta[l], h[l]);
  }
  return delta;
}

}  // namespace

std::vector<std::size_t> Network::widths() const {
  std::vector<std::size_t> w;
  w.reserve(layers.size() + 1);
  w.push_back(input_width());
  for (const Layer& layer : layers) w.push_back(layer.weight.rows);
  return w;
}

std::size_t Network::parameter_count() const {
  std::size_t count = 0;
  for (const Layer& layer : layers) {
    count += layer.weight.values.size() + layer.bias.size();
  }
  return count;
}

bool Network::all_finite() const {
  for (const Layer& layer : layers) {
    if (!layer.weight.all_finite()) return false;
    for (double b : layer.bias) {
      if (!std::isfinite(b)) return false;
    }
  }
  return true;
}

Network init_network(const std::vector<std::size_t>& widths, std::uint64_t seed) {
  if (widths.size() < 2) {
    fail_data("configuration error: network needs at least input and output widths");
  }
  for (std::size_t w : widths) {
    if (w == 0) fail_data("configuration error: zero layer width");
  }
  if (widths.back() != 2) {
    fail_data("configuration error: output width must be 2, got " +
              std::to_string(widths.back()));
  }

  Network net;
  net.layers.resize(widths.size() - 1);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t fan_in = widths[l];
    const std::size_t fan_out = widths[l + 1];
    RandomStream stream(stream_key(seed, StreamTag::init_weights, l));
    const double std_dev = std::sqrt(2.0 / static_cast<double>(fan_in));
    Layer& layer = net.layers[l];
    layer.weight = Matrix(fan_out, fan_in);
    for (double& w : layer.weight.values) w = std_dev * stream.normal();
    layer.bias.assign(fan_out, 0.0);
  }
  return net;
}

std::vector<std::size_t> preset_widths(const std::string& preset, std::size_t input_dim) {
  if (preset == "mlp-small") return {input_dim, 512, 512, 512, 2};
  if (preset == "mlp-large") return {input_dim, 1024, 1024, 1024, 1024, 1024, 1024, 2};
  fail_data("configuration error: unknown architecture preset \"" + preset + "\"");
}

Matrix forward(const Network& net, const Matrix& batch) {
  check_input_width(net, batch.cols);
  const std::size_t depth = net.layers.size();
  Matrix cur;
  const Matrix* input = &batch;
  for (std::size_t l = 0; l < depth; ++l) {
    const Matrix wt = transpose(net.layers[l].weight);
    cur = affine(*input, wt, net.layers[l].bias);
    if (l + 1 < depth) relu_inplace(cur);
    input = &cur;
  }
  return cur;
}

Matrix jacobian(const Network& net, std::span<const double> x) {
  check_input_width(net, x.size());
  const Matrix batch(1, x.size(), std::vector<double>(x.begin(), x.end()));
  const std::vector<Matrix> wt = transposed_weights(net);
  const std::vector<Matrix> h = forward_trace(net, batch, wt);

  const std::size_t q = net.output_width();
  Matrix jac(q, x.size());
  for (std::size_t r = 0; r < q; ++r) {
    const std::vector<Matrix> delta = output_sensitivities(net, h, r, 1);
    const Matrix row = matmul(delta[0], net.layers[0].weight);
    std::copy(row.values.begin(), row.values.end(), jac.row(r).begin());
  }
  return jac;
}

double jacobian_frobenius_sq(const Network& net, const Matrix& batch) {
  check_input_width(net, batch.cols);
  const std::vector<Matrix> wt = transposed_weights(net);
  const std::vector<Matrix> h = forward_trace(net, batch, wt);

  double sum = 0.0;
  for (std::size_t r = 0; r < net.output_width(); ++r) {
    const std::vector<Matrix> delta = output_sensitivities(net, h, r, batch.rows);
    const Matrix rows = matmul(delta[0], net.layers[0].weight);
    for (double v : rows.values) sum += v * v;
  }
  return sum / static_cast<double>(batch.rows);
}

Gradients param_gradients(const Network& net, const Matrix& batch,
                          const Matrix& targets, double lambda) {
  check_input_width(net, batch.cols);
  if (targets.rows != batch.rows || targets.cols != net.output_width()) {
    fail_data("validation error: target shape " + std::to_string(targets.rows) + "x" +
              std::to_string(targets.cols) + " does not match batch and output width");
  }
  if (lambda < 0.0) {
    fail_data("configuration error: lambda must be non-negative");
  }

  const std::size_t depth = net.layers.size();
  const std::size_t n = batch.rows;
  const double inv_n = 1.0 / static_cast<double>(n);

  const std::vector<Matrix> wt = transposed_weights(net);
  const std::vector<Matrix> h = forward_trace(net, batch, wt);
  for (std::size_t l = 0; l < depth; ++l) {
    if (!h[l].all_finite()) {
      fail_numeric("numerical error: non-finite activation in layer " +
                   std::to_string(l));
    }
  }

  Gradients grads;
  grads.layers.resize(depth);
  for (std::size_t l = 0; l < depth; ++l) {
    grads.layers[l].weight =
        Matrix(net.layers[l].weight.rows, net.layers[l].weight.cols, 0.0);
    grads.layers[l].bias.assign(net.layers[l].bias.size(), 0.0);
  }

  // Squared-error term.
  const Matrix& output = h[depth - 1];
  double mse = 0.0;
  Matrix grad_out(n, net.output_width());
  for (std::size_t i = 0; i < grad_out.values.size(); ++i) {
    const double diff = output.values[i] - targets.values[i];
    mse += diff * diff;
    grad_out.values[i] = 2.0 * inv_n * diff;
  }
  grads.loss = mse * inv_n;

  Matrix grad = std::move(grad_out);
  for (std::size_t l = depth; l-- > 0;) {
    const Matrix& input = (l == 0) ? batch : h[l - 1];
    add_atb_scaled(grad, input, 1.0, grads.layers[l].weight);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = grad.values.data() + i * grad.cols;
      for (std::size_t j = 0; j < grad.cols; ++j) grads.layers[l].bias[j] += row[j];
    }
    if (l > 0) {
      Matrix next = matmul(grad, net.layers[l].weight);
      mask_by_active(next, h[l - 1]);
      grad = std::move(next);
    }
  }

  // Jacobian penalty term. With a fixed activation pattern the network is
  // linear, so d||J||_F^2 / dW_l = 2 * delta_l^T tangent_{l-1}, where delta is
  // the reverse sensitivity of one output coordinate and the tangent is a
  // forward pass of that detached Jacobian row. Bias gradients vanish.
  if (lambda > 0.0) {
    double penalty_sum = 0.0;
    for (std::size_t r = 0; r < net.output_width(); ++r) {
      const std::vector<Matrix> delta = output_sensitivities(net, h, r, n);
      Matrix tangent = matmul(delta[0], net.layers[0].weight);  // J row r per sample
      for (double v : tangent.values) penalty_sum += v * v;
      for (std::size_t l = 0; l < depth; ++l) {
        add_atb_scaled(delta[l], tangent, 2.0 * lambda * inv_n,
                       grads.layers[l].weight);
        if (l + 1 < depth) {
          Matrix next = matmul(tangent, wt[l]);
          mask_by_active(next, h[l]);
          tangent = std::move(next);
        }
      }
    }
    grads.loss += lambda * penalty_sum * inv_n;
  }

  if (!std::isfinite(grads.loss)) {
    fail_numeric("numerical error: non-finite loss value");
  }
  return grads;
}

}  // namespace pstab
