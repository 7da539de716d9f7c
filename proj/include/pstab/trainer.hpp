#pragma once

#include <cstdint>
#include <vector>

#include "pstab/network.hpp"

namespace pstab {

struct TrainConfig {
  std::size_t batch_size = 256;
  double learning_rate = 1e-3;
  std::size_t max_epochs = 100;
  std::size_t patience = 10;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

struct EpochRecord {
  double train_loss = 0.0;  // mean over samples, includes the Jacobian penalty
  double val_loss = 0.0;    // pure MSE, the early-stopping signal
  bool best_so_far = false;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t stopped_epoch = 0;  // number of epochs actually run
  std::size_t best_epoch = 0;     // 1-based epoch whose weights are returned
  double best_val_loss = 0.0;
};

// First/second moment accumulators, one slot per parameter tensor.
struct AdamState {
  std::vector<Layer> m;
  std::vector<Layer> v;
  std::uint64_t step = 0;
};

AdamState make_adam_state(const Network& net);

// Bias-corrected Adam update, applied in place.
void adam_step(Network& net, const Gradients& grads, AdamState& state,
               const TrainConfig& cfg);

struct TrainResult {
  Network net;  // weights of the best-validation epoch
  TrainHistory history;
};

// Mini-batch Adam on MSE + lambda * Jacobian penalty. Rows are reshuffled
// every epoch with a stream derived from (cfg.seed, epoch). Stops early after
// cfg.patience consecutive epochs without a strict validation improvement.
TrainResult train(Network net, const Matrix& train_inputs, const Matrix& train_targets,
                  const Matrix& val_inputs, const Matrix& val_targets,
                  const TrainConfig& cfg);

// Mean over rows of the squared Euclidean distance to the target.
double evaluate_mse(const Network& net, const Matrix& inputs, const Matrix& targets);

}  // namespace pstab
