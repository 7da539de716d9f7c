#include "pstab/trainer.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "pstab/error.hpp"
#include "pstab/rng.hpp"
#include "pstab/split.hpp"

namespace pstab {

void TrainConfig::validate() const {
  if (batch_size < 1) fail_data("configuration error: batch_size must be >= 1");
  if (learning_rate <= 0.0) {
    fail_data("configuration error: learning_rate must be positive");
  }
  if (max_epochs < 1) fail_data("configuration error: max_epochs must be >= 1");
  if (patience < 1 || patience > max_epochs) {
    fail_data("configuration error: patience must be in [1, max_epochs]");
  }
  if (lambda < 0.0) fail_data("configuration error: lambda must be non-negative");
}

AdamState make_adam_state(const Network& net) {
  AdamState state;
  state.m.resize(net.layers.size());
  state.v.resize(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    state.m[l].weight = Matrix(layer.weight.rows, layer.weight.cols, 0.0);
    state.m[l].bias.assign(layer.bias.size(), 0.0);
    state.v[l].weight = Matrix(layer.weight.rows, layer.weight.cols, 0.0);
    state.v[l].bias.assign(layer.bias.size(), 0.0);
  }
  return state;
}

namespace {

void adam_update(double* params, const double* grads, double* m, double* v,
                 std::size_t count, const TrainConfig& cfg, double m_corr,
                 double v_corr) {
  for (std::size_t k = 0; k < count; ++k) {
    const double g = grads[k];
    m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * g;
    v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = m[k] / m_corr;
    const double v_hat = v[k] / v_corr;
    params[k] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

}  // namespace

void adam_step(Network& net, const Gradients& grads, AdamState& state,
               const TrainConfig& cfg) {
  if (grads.layers.size() != net.layers.size()) {
    fail_data("validation error: gradient layer count mismatch");
  }
  for (const Layer& layer : grads.layers) {
    if (!layer.weight.all_finite()) {
      fail_numeric("numerical error: non-finite weight gradient");
    }
    for (double b : layer.bias) {
      if (!std::isfinite(b)) fail_numeric("numerical error: non-finite bias gradient");
    }
  }

  ++state.step;
  const auto t = static_cast<double>(state.step);
  const double m_corr = 1.0 - std::pow(cfg.beta1, t);
  const double v_corr = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    Layer& layer = net.layers[l];
    adam_update(layer.weight.values.data(), grads.layers[l].weight.values.data(),
                state.m[l].weight.values.data(), state.v[l].weight.values.data(),
                layer.weight.values.size(), cfg, m_corr, v_corr);
    adam_update(layer.bias.data(), grads.layers[l].bias.data(),
                state.m[l].bias.data(), state.v[l].bias.data(), layer.bias.size(),
                cfg, m_corr, v_corr);
  }
}

TrainResult train(Network net, const Matrix& train_inputs, const Matrix& train_targets,
                  const Matrix& val_inputs, const Matrix& val_targets,
                  const TrainConfig& cfg) {
  cfg.validate();
  if (train_inputs.rows != train_targets.rows || val_inputs.rows != val_targets.rows) {
    fail_data("validation error: input and target row counts disagree");
  }
  if (train_targets.cols != net.output_width() ||
      val_targets.cols != net.output_width()) {
    fail_data("validation error: targets must have " +
              std::to_string(net.output_width()) + " columns");
  }
  if (train_inputs.rows == 0 || val_inputs.rows == 0) {
    fail_data("validation error: empty training or validation set");
  }

  const std::size_t n = train_inputs.rows;
  AdamState state = make_adam_state(net);

  TrainResult result;
  result.history.best_val_loss = std::numeric_limits<double>::infinity();
  Network best = net;
  std::size_t bad_streak = 0;

  std::vector<std::size_t> order(n);
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream stream(stream_key(cfg.seed, StreamTag::epoch_shuffle, epoch));
    stream.shuffle(order);

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const std::size_t stop = std::min(n, start + cfg.batch_size);
      const std::vector<std::size_t> batch_rows(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                order.begin() + static_cast<std::ptrdiff_t>(stop));
      const Matrix bx = gather_rows(train_inputs, batch_rows);
      const Matrix by = gather_rows(train_targets, batch_rows);
      try {
        const Gradients grads = param_gradients(net, bx, by, cfg.lambda);
        loss_sum += grads.loss * static_cast<double>(bx.rows);
        adam_step(net, grads, state, cfg);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::numeric) throw;
        fail_numeric("training error: diverged at epoch " + std::to_string(epoch) +
                     " (" + e.what() + ")");
      }
    }

    EpochRecord record;
    record.train_loss = loss_sum / static_cast<double>(n);
    record.val_loss = evaluate_mse(net, val_inputs, val_targets);
    if (!std::isfinite(record.val_loss)) {
      fail_numeric("training error: diverged at epoch " + std::to_string(epoch) +
                   " (non-finite validation loss)");
    }

    if (record.val_loss < result.history.best_val_loss) {
      record.best_so_far = true;
      result.history.best_val_loss = record.val_loss;
      result.history.best_epoch = epoch;
      best = net;
      bad_streak = 0;
    } else {
      ++bad_streak;
    }
    result.history.epochs.push_back(record);
    if (bad_streak >= cfg.patience) break;
  }

  result.history.stopped_epoch = result.history.epochs.size();
  result.net = std::move(best);
  return result;
}

double evaluate_mse(const Network& net, const Matrix& inputs, const Matrix& targets) {
  if (inputs.rows != targets.rows) {
    fail_data("validation error: input and target row counts disagree");
  }
  const Matrix pred = forward(net, inputs);
  if (pred.cols != targets.cols) {
    fail_data("validation error: target column count mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.rows; ++i) {
    sum += squared_distance(pred.row(i), targets.row(i));
  }
  return sum / static_cast<double>(pred.rows);
}

}  // namespace pstab
