#include "pstab/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <string>
#include <utility>

#include "pstab/anchors.hpp"
#include "pstab/canonical_json.hpp"
#include "pstab/error.hpp"
#include "pstab/io.hpp"
#include "pstab/network.hpp"
#include "pstab/perturb.hpp"
#include "pstab/point.hpp"
#include "pstab/quality.hpp"
#include "pstab/split.hpp"
#include "pstab/stability.hpp"
#include "pstab/svg.hpp"
#include "pstab/trainer.hpp"
#include "pstab/version.hpp"

namespace pstab {

namespace {

using nlohmann::json;

template <typename F>
auto run_stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + " stage: " + e.what());
  }
}

Point project_point(const Network& net, const std::vector<double>& x0) {
  Matrix input(1, x0.size(), x0);
  const Matrix out = forward(net, input);
  return Point{out.at(0, 0), out.at(0, 1)};
}

}  // namespace

std::vector<std::size_t> resolve_widths(const PipelineConfig& cfg,
                                        std::size_t input_dim) {
  if (cfg.widths.empty()) return preset_widths(cfg.preset, input_dim);
  if (cfg.widths.front() != input_dim) {
    fail_data("config error: architecture expects input width " +
              std::to_string(cfg.widths.front()) + " but the data has " +
              std::to_string(input_dim) + " columns");
  }
  return cfg.widths;
}

SeedFragment run_pipeline(const PipelineConfig& cfg, std::uint64_t seed,
                          const Matrix& data, const Labels& labels,
                          const Matrix& reference) {
  cfg.validate();
  if (reference.cols != 2) {
    fail_data("validation error: the reference embedding must have 2 columns, got " +
              std::to_string(reference.cols));
  }
  if (reference.rows != data.rows) {
    fail_data("validation error: data has " + std::to_string(data.rows) +
              " rows but the reference embedding has " + std::to_string(reference.rows));
  }

  SeedFragment frag;
  frag.seed = seed;

  // Split.
  SplitSpec split_spec = cfg.split;
  split_spec.seed = seed;
  const SplitIndices split = run_stage("split", [&] {
    return split_dataset(data, labels, split_spec);
  });
  const Matrix train_x = gather_rows(data, split.train);
  const Matrix train_y = gather_rows(reference, split.train);
  const Matrix val_x = gather_rows(data, split.val);
  const Matrix val_y = gather_rows(reference, split.val);
  const Matrix test_x = gather_rows(data, split.test);
  const Matrix test_y = gather_rows(reference, split.test);

  // Train; divergence marks the fragment failed instead of propagating.
  const std::vector<std::size_t> widths = resolve_widths(cfg, data.cols);
  TrainConfig train_cfg = cfg.train;
  train_cfg.lambda = cfg.lambda;
  train_cfg.seed = seed;
  TrainResult trained;
  try {
    Network net = init_network(widths, seed);
    trained = train(std::move(net), train_x, train_y, val_x, val_y, train_cfg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::numeric) {
      frag.failed = true;
      frag.failure_stage = "train";
      frag.failure_reason = e.what();
      return frag;
    }
    throw Error(e.kind(), std::string("train stage: ") + e.what());
  }
  const Network& net = trained.net;
  frag.epochs_run = trained.history.stopped_epoch;
  frag.best_epoch = trained.history.best_epoch;
  frag.best_val_loss = trained.history.best_val_loss;

  // Anchors come from the full dataset so every class is represented.
  const AnchorSet anchors = run_stage("anchors", [&] {
    return select_anchors(data, reference, labels, cfg.anchors_per_class);
  });

  // Noise scale.
  run_stage("noise", [&] {
    if (cfg.has_sigma_override) {
      frag.sigma = cfg.sigma_override;
      frag.r = cfg.sigma_override * std::sqrt(static_cast<double>(data.cols));
    } else {
      frag.r = pairwise_distance_percentile(data, cfg.percentile, cfg.pair_budget, seed);
      frag.sigma = sigma_from_radius(frag.r, data.cols);
    }
    return 0;
  });
  NoiseSpec noise;
  noise.r = frag.r;
  noise.sigma = frag.sigma;
  noise.dim = data.cols;
  noise.percentile = cfg.percentile;
  noise.clip = cfg.clip;
  noise.clip_low = cfg.clip_low;
  noise.clip_high = cfg.clip_high;
  noise.samples = cfg.noise_samples;
  noise.seed = seed;

  // Perturb every anchor and project the clouds.
  std::vector<Point> anchor_proj;
  std::vector<int> anchor_class;
  std::vector<Matrix> cloud_proj;
  double r_eff_sum = 0.0;
  run_stage("perturb", [&] {
    for (std::size_t a = 0; a < anchors.entries.size(); ++a) {
      const AnchorEntry& entry = anchors.entries[a];
      PerturbationCloud cloud = perturb_samples(entry.x0, a, noise);
      cloud.projections = forward(net, cloud.samples);
      anchor_proj.push_back(project_point(net, entry.x0));
      anchor_class.push_back(entry.class_id);
      cloud_proj.push_back(std::move(cloud.projections));
      r_eff_sum += cloud.r_eff;

      AnchorReport report;
      report.anchor = a;
      report.row = entry.row;
      report.class_id = entry.class_id;
      report.r_eff = cloud.r_eff;
      frag.anchors.push_back(report);
    }
    return 0;
  });
  frag.r_eff_mean = r_eff_sum / static_cast<double>(anchors.entries.size());

  // Stability metrics.
  const StabilitySummary stability = run_stage("stability", [&] {
    return compute_stability(anchor_proj, cloud_proj);
  });
  double d_dev_sum = 0.0;
  double d_bias_sum = 0.0;
  for (std::size_t a = 0; a < stability.anchors.size(); ++a) {
    frag.anchors[a].d_dev = stability.anchors[a].d_dev;
    frag.anchors[a].d_bias = stability.anchors[a].d_bias;
    frag.anchors[a].misassignment_rate = stability.anchors[a].misassignment_rate;
    d_dev_sum += stability.anchors[a].d_dev;
    d_bias_sum += stability.anchors[a].d_bias;
  }
  frag.d_dev_mean = d_dev_sum / static_cast<double>(stability.anchors.size());
  frag.d_bias_mean = d_bias_sum / static_cast<double>(stability.anchors.size());
  frag.e_na = stability.e_na;

  // Quality on the held-out test rows.
  run_stage("quality", [&] {
    frag.mse = evaluate_mse(net, test_x, test_y);
    const TcResult tc = averaged_tc(test_x, forward(net, test_x));
    frag.t_avg = tc.t_avg;
    frag.c_avg = tc.c_avg;
    frag.tc_ks = tc.ks;
    frag.t_values = tc.t_values;
    frag.c_values = tc.c_values;
    return 0;
  });

  // Optional diagnostics.
  if (!cfg.output_dir.empty() && !cfg.render_modes.empty()) {
    run_stage("render", [&] {
      const Scene scene = make_scene(reference, labels, anchor_proj, anchor_class,
                                     cloud_proj, cfg.max_background, seed);
      const std::string dir = cfg.output_dir + "/seed-" + std::to_string(seed);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) fail_data("io error: cannot create " + dir + ": " + ec.message());
      for (const RenderMode mode : cfg.render_modes) {
        render_diagnostic_file(scene, mode, stability, cfg.ellipse_scale,
                               dir + "/" + render_mode_name(mode) + ".svg");
      }
      return 0;
    });
  }

  return frag;
}

SeedFragment run_pipeline_files(const PipelineConfig& cfg, std::uint64_t seed) {
  cfg.require_paths();
  const Matrix data = load_matrix(cfg.data_path);
  const Labels labels = load_labels(cfg.labels_path);
  const Matrix reference = load_matrix(cfg.reference_path);
  return run_pipeline(cfg, seed, data, labels, reference);
}

nlohmann::json fragment_to_json(const SeedFragment& fragment) {
  json doc;
  doc["schema"] = kFragmentSchema;
  doc["tool_version"] = kToolVersion;
  doc["seed"] = fragment.seed;
  doc["failed"] = fragment.failed;
  if (fragment.failed) {
    doc["failure_stage"] = fragment.failure_stage;
    doc["failure_reason"] = fragment.failure_reason;
    return doc;
  }
  doc["metrics"] = {{"mse", fragment.mse},         {"t_avg", fragment.t_avg},
                    {"c_avg", fragment.c_avg},     {"d_dev", fragment.d_dev_mean},
                    {"d_bias", fragment.d_bias_mean}, {"e_na", fragment.e_na}};
  doc["tc"] = {{"ks", fragment.tc_ks}, {"t", fragment.t_values},
               {"c", fragment.c_values}};
  doc["noise"] = {{"r", fragment.r},
                  {"sigma", fragment.sigma},
                  {"r_eff", fragment.r_eff_mean},
                  {"r_eff_over_r",
                   fragment.r > 0.0 ? fragment.r_eff_mean / fragment.r : 0.0}};
  json anchor_rows = json::array();
  for (const AnchorReport& a : fragment.anchors) {
    anchor_rows.push_back({{"anchor", a.anchor},
                           {"row", a.row},
                           {"class", a.class_id},
                           {"d_dev", a.d_dev},
                           {"d_bias", a.d_bias},
                           {"misassignment_rate", a.misassignment_rate},
                           {"r_eff", a.r_eff}});
  }
  doc["anchors"] = anchor_rows;
  doc["train"] = {{"epochs_run", fragment.epochs_run},
                  {"best_epoch", fragment.best_epoch},
                  {"best_val_loss", fragment.best_val_loss}};
  return doc;
}

namespace {

SeedFragment parse_fragment(const json& doc) {
  SeedFragment frag;
  frag.seed = doc.at("seed").get<std::uint64_t>();
  frag.failed = doc.at("failed").get<bool>();
  if (frag.failed) {
    frag.failure_stage = doc.value("failure_stage", std::string());
    frag.failure_reason = doc.value("failure_reason", std::string());
    return frag;
  }

  const json& metrics = doc.at("metrics");
  frag.mse = metrics.at("mse").get<double>();
  frag.t_avg = metrics.at("t_avg").get<double>();
  frag.c_avg = metrics.at("c_avg").get<double>();
  frag.d_dev_mean = metrics.at("d_dev").get<double>();
  frag.d_bias_mean = metrics.at("d_bias").get<double>();
  frag.e_na = metrics.at("e_na").get<double>();

  const json& tc = doc.at("tc");
  frag.tc_ks = tc.at("ks").get<std::vector<std::size_t>>();
  frag.t_values = tc.at("t").get<std::vector<double>>();
  frag.c_values = tc.at("c").get<std::vector<double>>();

  const json& noise = doc.at("noise");
  frag.r = noise.at("r").get<double>();
  frag.sigma = noise.at("sigma").get<double>();
  frag.r_eff_mean = noise.at("r_eff").get<double>();

  for (const json& row : doc.at("anchors")) {
    AnchorReport a;
    a.anchor = row.at("anchor").get<std::size_t>();
    a.row = row.at("row").get<std::size_t>();
    a.class_id = row.at("class").get<int>();
    a.d_dev = row.at("d_dev").get<double>();
    a.d_bias = row.at("d_bias").get<double>();
    a.misassignment_rate = row.at("misassignment_rate").get<double>();
    a.r_eff = row.at("r_eff").get<double>();
    frag.anchors.push_back(a);
  }

  const json& train = doc.at("train");
  frag.epochs_run = train.at("epochs_run").get<std::size_t>();
  frag.best_epoch = train.at("best_epoch").get<std::size_t>();
  frag.best_val_loss = train.at("best_val_loss").get<double>();
  return frag;
}

}  // namespace

SeedFragment fragment_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("schema") || !doc.at("schema").is_string()) {
    fail_data("format error: not a pipeline fragment");
  }
  if (doc.at("schema").get<std::string>() != kFragmentSchema) {
    fail_data("format error: unsupported fragment schema \"" +
              doc.at("schema").get<std::string>() + "\"");
  }
  try {
    return parse_fragment(doc);
  } catch (const json::exception& e) {
    fail_data(std::string("format error: malformed fragment: ") + e.what());
  }
}

}  // namespace pstab
