#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pstab/config.hpp"
#include "pstab/labels.hpp"
#include "pstab/matrix.hpp"

namespace pstab {

struct AnchorReport {
  std::size_t anchor = 0;  // position in the anchor set
  std::size_t row = 0;     // dataset row of the anchor sample
  int class_id = 0;
  double d_dev = 0.0;
  double d_bias = 0.0;
  double misassignment_rate = 0.0;
  double r_eff = 0.0;
};

// One seed's complete pipeline output. A training failure marks the fragment
// failed and leaves the metric fields untouched; aggregation skips it.
struct SeedFragment {
  std::uint64_t seed = 0;
  bool failed = false;
  std::string failure_stage;
  std::string failure_reason;

  double mse = 0.0;
  double t_avg = 0.0;
  double c_avg = 0.0;
  std::vector<std::size_t> tc_ks;
  std::vector<double> t_values;
  std::vector<double> c_values;
  double d_dev_mean = 0.0;
  double d_bias_mean = 0.0;
  double e_na = 0.0;
  std::vector<AnchorReport> anchors;

  double r = 0.0;
  double sigma = 0.0;
  double r_eff_mean = 0.0;

  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  double best_val_loss = 0.0;
};

// split -> train -> anchors -> noise scale -> perturb -> project ->
// stability -> quality on the held-out test rows -> optional SVG renders
// under output_dir/seed-<seed>/. Deterministic for a fixed (cfg, seed).
// Explicit widths from the config, or its preset expanded for the input width.
std::vector<std::size_t> resolve_widths(const PipelineConfig& cfg,
                                        std::size_t input_dim);

SeedFragment run_pipeline(const PipelineConfig& cfg, std::uint64_t seed,
                          const Matrix& data, const Labels& labels,
                          const Matrix& reference);

// Loads the three dataset files named by the config, then runs.
SeedFragment run_pipeline_files(const PipelineConfig& cfg, std::uint64_t seed);

nlohmann::json fragment_to_json(const SeedFragment& fragment);
SeedFragment fragment_from_json(const nlohmann::json& doc);

}  // namespace pstab
