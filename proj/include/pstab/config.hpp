#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pstab/split.hpp"
#include "pstab/svg.hpp"
#include "pstab/trainer.hpp"

namespace pstab {

// Full pipeline configuration. Every field has a working default except the
// dataset paths, which only the CLI needs; unknown JSON keys are rejected so
// typos cannot silently fall back to defaults.
struct PipelineConfig {
  std::string data_path;
  std::string labels_path;
  std::string reference_path;
  std::string output_dir;

  std::string preset = "mlp-small";   // used when widths is empty
  std::vector<std::size_t> widths;    // explicit layer sizes, overrides preset
  double lambda = 0.0;
  TrainConfig train;                  // lambda and seed are filled per run

  double percentile = 0.25;
  std::size_t noise_samples = 2000;
  bool clip = false;
  double clip_low = 0.0;
  double clip_high = 1.0;
  bool has_sigma_override = false;
  double sigma_override = 0.0;
  std::size_t pair_budget = 2000000;

  SplitSpec split;                    // seed is filled per run

  std::size_t anchors_per_class = 1;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

  std::vector<RenderMode> render_modes = {RenderMode::anchor_lines,
                                          RenderMode::local_pca,
                                          RenderMode::voronoi};
  double ellipse_scale = 2.0;
  std::size_t max_background = 20000;

  void validate() const;
  void require_paths() const;  // CLI entry points need the dataset files
};

PipelineConfig pipeline_config_from_json(const nlohmann::json& doc);
PipelineConfig load_pipeline_config(const std::string& path);

// Every effective setting, defaults included, so the config hash pins the
// whole run.
nlohmann::json pipeline_config_to_json(const PipelineConfig& cfg);

}  // namespace pstab
