#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pstab/anchors.hpp"
#include "pstab/canonical_json.hpp"
#include "pstab/config.hpp"
#include "pstab/error.hpp"
#include "pstab/io.hpp"
#include "pstab/network.hpp"
#include "pstab/network_io.hpp"
#include "pstab/perturb.hpp"
#include "pstab/pipeline.hpp"
#include "pstab/report.hpp"
#include "pstab/split.hpp"
#include "pstab/trainer.hpp"
#include "pstab/version.hpp"

namespace {

using nlohmann::json;
using pstab::PipelineConfig;

struct Options {
  std::string config_path;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool has_sigma = false;
  double sigma = 0.0;
  std::vector<std::string> fragment_paths;
};

PipelineConfig load_config(const Options& opt) {
  PipelineConfig cfg = pstab::load_pipeline_config(opt.config_path);
  if (opt.has_sigma) {
    cfg.has_sigma_override = true;
    cfg.sigma_override = opt.sigma;
  }
  if (!opt.out.empty()) cfg.output_dir = opt.out;
  return cfg;
}

const std::string& require_out(const PipelineConfig& cfg) {
  if (cfg.output_dir.empty()) {
    pstab::fail_usage(
        "usage error: an output directory is required, pass --out or set "
        "output_dir in the config");
  }
  return cfg.output_dir;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) pstab::fail_data("io error: cannot create " + dir + ": " + ec.message());
}

struct Dataset {
  pstab::Matrix data;
  pstab::Labels labels;
  pstab::Matrix reference;
};

Dataset load_dataset(const PipelineConfig& cfg) {
  cfg.require_paths();
  Dataset ds;
  ds.data = pstab::load_matrix(cfg.data_path);
  ds.labels = pstab::load_labels(cfg.labels_path);
  ds.reference = pstab::load_matrix(cfg.reference_path);
  return ds;
}

std::string metrics_line(const pstab::SeedFragment& frag) {
  std::ostringstream os;
  os << "seed " << frag.seed;
  if (frag.failed) {
    os << ": failed at " << frag.failure_stage << " (" << frag.failure_reason << ")";
  } else {
    os << ": mse=" << frag.mse << " t_avg=" << frag.t_avg << " c_avg=" << frag.c_avg
       << " d_dev=" << frag.d_dev_mean << " d_bias=" << frag.d_bias_mean
       << " e_na=" << frag.e_na;
  }
  return os.str();
}

void run_fit(const Options& opt) {
  const PipelineConfig cfg = load_config(opt);
  cfg.validate();
  const std::string& out = require_out(cfg);
  const Dataset ds = load_dataset(cfg);
  if (ds.reference.cols != 2) {
    pstab::fail_data("validation error: the reference embedding must have 2 columns");
  }

  pstab::SplitSpec split_spec = cfg.split;
  split_spec.seed = opt.seed;
  const pstab::SplitIndices split =
      pstab::split_dataset(ds.data, ds.labels, split_spec);
  const pstab::Matrix train_x = pstab::gather_rows(ds.data, split.train);
  const pstab::Matrix train_y = pstab::gather_rows(ds.reference, split.train);
  const pstab::Matrix val_x = pstab::gather_rows(ds.data, split.val);
  const pstab::Matrix val_y = pstab::gather_rows(ds.reference, split.val);

  const std::vector<std::size_t> widths = pstab::resolve_widths(cfg, ds.data.cols);
  pstab::TrainConfig train_cfg = cfg.train;
  train_cfg.lambda = cfg.lambda;
  train_cfg.seed = opt.seed;
  const pstab::TrainResult trained = pstab::train(
      pstab::init_network(widths, opt.seed), train_x, train_y, val_x, val_y,
      train_cfg);

  ensure_dir(out);
  json meta;
  meta["tool_version"] = pstab::kToolVersion;
  meta["seed"] = opt.seed;
  meta["lambda"] = cfg.lambda;
  meta["epochs_run"] = trained.history.stopped_epoch;
  meta["best_epoch"] = trained.history.best_epoch;
  meta["best_val_loss"] = trained.history.best_val_loss;
  const std::string net_path = out + "/network.pstn";
  pstab::save_network(trained.net, net_path, pstab::canonical_json(meta));
  pstab::write_canonical_json(meta, out + "/train.json");
  std::cout << "trained " << widths.size() - 1 << " layers for "
            << trained.history.stopped_epoch << " epochs (best epoch "
            << trained.history.best_epoch << ", val loss "
            << trained.history.best_val_loss << ")\n"
            << "wrote " << net_path << "\n";
}

void run_anchors(const Options& opt) {
  const PipelineConfig cfg = load_config(opt);
  cfg.validate();
  const std::string& out = require_out(cfg);
  const Dataset ds = load_dataset(cfg);
  const pstab::AnchorSet anchors = pstab::select_anchors(
      ds.data, ds.reference, ds.labels, cfg.anchors_per_class);
  ensure_dir(out);
  const std::string path = out + "/anchors.csv";
  pstab::write_anchor_csv(anchors, path);
  std::cout << "wrote " << anchors.entries.size() << " anchors to " << path << "\n";
}

void run_perturb(const Options& opt) {
  const PipelineConfig cfg = load_config(opt);
  cfg.validate();
  const std::string& out = require_out(cfg);
  const pstab::MatrixFormat format = pstab::matrix_format_from_name(opt.format);
  const Dataset ds = load_dataset(cfg);
  const pstab::AnchorSet anchors = pstab::select_anchors(
      ds.data, ds.reference, ds.labels, cfg.anchors_per_class);

  pstab::NoiseSpec noise;
  if (cfg.has_sigma_override) {
    noise.sigma = cfg.sigma_override;
    noise.r = cfg.sigma_override * std::sqrt(static_cast<double>(ds.data.cols));
  } else {
    noise.r = pstab::pairwise_distance_percentile(ds.data, cfg.percentile,
                                                  cfg.pair_budget, opt.seed);
    noise.sigma = pstab::sigma_from_radius(noise.r, ds.data.cols);
  }
  noise.dim = ds.data.cols;
  noise.percentile = cfg.percentile;
  noise.clip = cfg.clip;
  noise.clip_low = cfg.clip_low;
  noise.clip_high = cfg.clip_high;
  noise.samples = cfg.noise_samples;
  noise.seed = opt.seed;

  ensure_dir(out);
  const char* ext = format == pstab::MatrixFormat::binary ? ".bin" : ".csv";
  json entries = json::array();
  double r_eff_sum = 0.0;
  for (std::size_t a = 0; a < anchors.entries.size(); ++a) {
    const pstab::AnchorEntry& entry = anchors.entries[a];
    const pstab::PerturbationCloud cloud =
        pstab::perturb_samples(entry.x0, a, noise);
    pstab::write_matrix(cloud.samples,
                        out + "/cloud-" + std::to_string(a) + ext, format);
    r_eff_sum += cloud.r_eff;
    entries.push_back({{"anchor", a},
                       {"row", entry.row},
                       {"class", entry.class_id},
                       {"r_eff", cloud.r_eff}});
  }
  json doc;
  doc["r"] = noise.r;
  doc["sigma"] = noise.sigma;
  doc["dim"] = noise.dim;
  doc["samples"] = noise.samples;
  doc["clip"] = noise.clip;
  doc["seed"] = opt.seed;
  doc["anchors"] = entries;
  doc["r_eff_mean"] = r_eff_sum / static_cast<double>(anchors.entries.size());
  pstab::write_canonical_json(doc, out + "/noise.json");
  std::cout << "r=" << noise.r << " sigma=" << noise.sigma << "; wrote "
            << anchors.entries.size() << " clouds of " << noise.samples
            << " samples to " << out << "\n";
}

void run_eval(const Options& opt) {
  PipelineConfig cfg = load_config(opt);
  cfg.output_dir.clear();  // metrics only, never render
  const pstab::SeedFragment frag = pstab::run_pipeline_files(cfg, opt.seed);
  if (frag.failed) {
    pstab::fail_numeric(frag.failure_stage + " stage: " + frag.failure_reason);
  }
  const json doc = pstab::fragment_to_json(frag);
  if (opt.out.empty()) {
    std::cout << pstab::canonical_json(doc) << "\n";
  } else {
    ensure_dir(opt.out);
    const std::string path =
        opt.out + "/fragment-seed-" + std::to_string(opt.seed) + ".json";
    pstab::write_canonical_json(doc, path);
    std::cout << metrics_line(frag) << "\n" << "wrote " << path << "\n";
  }
}

void run_render(const Options& opt) {
  PipelineConfig cfg = load_config(opt);
  const std::string out = require_out(cfg);
  if (cfg.render_modes.empty()) {
    pstab::fail_data("config error: no render modes configured");
  }
  const pstab::SeedFragment frag = pstab::run_pipeline_files(cfg, opt.seed);
  if (frag.failed) {
    pstab::fail_numeric(frag.failure_stage + " stage: " + frag.failure_reason);
  }
  std::cout << metrics_line(frag) << "\n"
            << "wrote " << cfg.render_modes.size() << " diagnostics to " << out
            << "/seed-" << opt.seed << "\n";
}

void run_pipeline_cmd(const Options& opt) {
  const PipelineConfig cfg = load_config(opt);
  cfg.validate();
  const std::string& out = require_out(cfg);
  ensure_dir(out);
  std::vector<pstab::SeedFragment> fragments;
  for (const std::uint64_t seed : cfg.seeds) {
    pstab::SeedFragment frag = pstab::run_pipeline_files(cfg, seed);
    std::cout << metrics_line(frag) << "\n";
    pstab::write_canonical_json(
        pstab::fragment_to_json(frag),
        out + "/fragment-seed-" + std::to_string(seed) + ".json");
    fragments.push_back(std::move(frag));
  }
  const json report = pstab::build_report(cfg, fragments);
  const std::string path = out + "/report.json";
  pstab::write_report(report, path);
  std::cout << "wrote " << path << "\n";
}

void run_report(const Options& opt) {
  const PipelineConfig cfg = load_config(opt);
  std::vector<pstab::SeedFragment> fragments;
  fragments.reserve(opt.fragment_paths.size());
  for (const std::string& path : opt.fragment_paths) {
    fragments.push_back(pstab::fragment_from_json(pstab::load_json(path)));
  }
  const json report = pstab::build_report(cfg, fragments);
  if (opt.out.empty()) {
    std::cout << pstab::canonical_json(report) << "\n";
  } else {
    ensure_dir(opt.out);
    const std::string path = opt.out + "/report.json";
    pstab::write_report(report, path);
    std::cout << "wrote " << path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability probe for parametric 2D projections"};
  app.require_subcommand(1);
  Options opt;

  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config file")
        ->required();
  };
  const auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "run seed (default 0)");
  };
  const auto add_out = [&](CLI::App* sub, const char* help) {
    sub->add_option("--out", opt.out, help);
  };
  std::vector<CLI::Option*> sigma_opts;
  const auto add_sigma = [&](CLI::App* sub) {
    sigma_opts.push_back(sub->add_option(
        "--sigma", opt.sigma, "noise std dev override, bypasses the percentile rule"));
  };

  CLI::App* fit = app.add_subcommand("fit", "train a projector and save it");
  add_config(fit);
  add_seed(fit);
  add_out(fit, "directory for network.pstn and train.json");

  CLI::App* anchors = app.add_subcommand("anchors", "select per-class anchors");
  add_config(anchors);
  add_out(anchors, "directory for anchors.csv");

  CLI::App* perturb =
      app.add_subcommand("perturb", "write perturbation clouds per anchor");
  add_config(perturb);
  add_seed(perturb);
  add_out(perturb, "directory for cloud files and noise.json");
  add_sigma(perturb);
  perturb->add_option("--format", opt.format, "cloud matrix format")
      ->check(CLI::IsMember({"csv", "binary"}));

  CLI::App* eval =
      app.add_subcommand("eval", "run one seed and emit its metrics fragment");
  add_config(eval);
  add_seed(eval);
  add_out(eval, "directory for the fragment (stdout when omitted)");
  add_sigma(eval);

  CLI::App* render =
      app.add_subcommand("render", "run one seed and write SVG diagnostics");
  add_config(render);
  add_seed(render);
  add_out(render, "diagnostics directory (overrides config output_dir)");
  add_sigma(render);

  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "run every configured seed and write the aggregate report");
  add_config(pipeline);
  add_out(pipeline, "report directory (overrides config output_dir)");
  add_sigma(pipeline);

  CLI::App* report =
      app.add_subcommand("report", "aggregate fragment files into a report");
  add_config(report);
  add_out(report, "report directory (stdout when omitted)");
  report->add_option("fragments", opt.fragment_paths, "fragment JSON files")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (const CLI::Option* sigma : sigma_opts) {
    if (sigma->count() > 0) opt.has_sigma = true;
  }

  try {
    if (*fit) run_fit(opt);
    if (*anchors) run_anchors(opt);
    if (*perturb) run_perturb(opt);
    if (*eval) run_eval(opt);
    if (*render) run_render(opt);
    if (*pipeline) run_pipeline_cmd(opt);
    if (*report) run_report(opt);
  } catch (const pstab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
