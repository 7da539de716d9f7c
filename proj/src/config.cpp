#include "pstab/config.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "pstab/canonical_json.hpp"
#include "pstab/error.hpp"

namespace pstab {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& scope, const std::string& key) {
  fail_data("config error: unknown key \"" + (scope.empty() ? key : scope + "." + key) +
            "\"");
}

void check_keys(const json& obj, const std::string& scope,
                std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool found = false;
    for (const char* name : known) {
      if (it.key() == name) {
        found = true;
        break;
      }
    }
    if (!found) bad_key(scope, it.key());
  }
}

std::string path_of(const std::string& scope, const char* key) {
  return scope.empty() ? std::string(key) : scope + "." + key;
}

void read_double(const json& obj, const std::string& scope, const char* key,
                 double& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    fail_data("config error: \"" + path_of(scope, key) + "\" must be a number");
  }
  out = v.get<double>();
}

void read_size(const json& obj, const std::string& scope, const char* key,
               std::size_t& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    fail_data("config error: \"" + path_of(scope, key) +
              "\" must be a non-negative integer");
  }
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
    fail_data("config error: \"" + path_of(scope, key) +
              "\" must be a non-negative integer");
  }
  out = v.get<std::size_t>();
}

void read_bool(const json& obj, const std::string& scope, const char* key, bool& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_boolean()) {
    fail_data("config error: \"" + path_of(scope, key) + "\" must be a boolean");
  }
  out = v.get<bool>();
}

void read_string(const json& obj, const std::string& scope, const char* key,
                 std::string& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_string()) {
    fail_data("config error: \"" + path_of(scope, key) + "\" must be a string");
  }
  out = v.get<std::string>();
}

}  // namespace

void PipelineConfig::validate() const {
  if (widths.empty()) {
    if (preset != "mlp-small" && preset != "mlp-large") {
      fail_data("config error: unknown architecture preset \"" + preset + "\"");
    }
  } else {
    if (widths.size() < 2) {
      fail_data("config error: explicit widths need at least input and output layers");
    }
    for (const std::size_t w : widths) {
      if (w == 0) fail_data("config error: zero-width layer");
    }
    if (widths.back() != 2) {
      fail_data("config error: the output layer must have width 2");
    }
  }
  if (lambda < 0.0) fail_data("config error: lambda must be non-negative");

  TrainConfig probe = train;
  probe.lambda = lambda;
  probe.seed = 0;
  probe.validate();

  if (!(percentile > 0.0) || !(percentile < 100.0)) {
    fail_data("config error: percentile must lie strictly between 0 and 100");
  }
  if (noise_samples < 1) fail_data("config error: noise samples must be positive");
  if (!(clip_low < clip_high)) {
    fail_data("config error: clip bounds must satisfy low < high");
  }
  if (has_sigma_override && sigma_override < 0.0) {
    fail_data("config error: sigma override must be non-negative");
  }
  if (pair_budget < 1) fail_data("config error: pair budget must be positive");

  SplitSpec probe_split = split;
  probe_split.seed = 0;
  probe_split.validate();

  if (anchors_per_class < 1) {
    fail_data("config error: anchors per class must be positive");
  }
  if (seeds.empty()) fail_data("config error: seeds must be nonempty");
  std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) {
    fail_data("config error: seeds must be distinct");
  }
  if (!(ellipse_scale > 0.0)) {
    fail_data("config error: ellipse scale must be positive");
  }
  if (max_background < 1) {
    fail_data("config error: background budget must be positive");
  }
}

void PipelineConfig::require_paths() const {
  if (data_path.empty()) fail_data("config error: missing \"data\" path");
  if (labels_path.empty()) fail_data("config error: missing \"labels\" path");
  if (reference_path.empty()) fail_data("config error: missing \"reference\" path");
}

PipelineConfig pipeline_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) fail_data("config error: the configuration must be an object");
  check_keys(doc, "",
             {"data", "labels", "reference", "output_dir", "architecture", "lambda",
              "train", "noise", "split", "anchors_per_class", "seeds", "render_modes",
              "ellipse_scale", "max_background"});

  PipelineConfig cfg;
  read_string(doc, "", "data", cfg.data_path);
  read_string(doc, "", "labels", cfg.labels_path);
  read_string(doc, "", "reference", cfg.reference_path);
  read_string(doc, "", "output_dir", cfg.output_dir);

  if (doc.contains("architecture")) {
    const json& arch = doc.at("architecture");
    if (arch.is_string()) {
      cfg.preset = arch.get<std::string>();
      cfg.widths.clear();
    } else if (arch.is_array()) {
      cfg.widths.clear();
      for (const json& v : arch) {
        if (!v.is_number_integer() && !v.is_number_unsigned()) {
          fail_data("config error: \"architecture\" entries must be integers");
        }
        if (v.is_number_integer() && v.get<std::int64_t>() <= 0) {
          fail_data("config error: \"architecture\" entries must be positive");
        }
        cfg.widths.push_back(v.get<std::size_t>());
      }
      cfg.preset.clear();
    } else {
      fail_data("config error: \"architecture\" must be a preset name or a width list");
    }
  }

  read_double(doc, "", "lambda", cfg.lambda);

  if (doc.contains("train")) {
    const json& train = doc.at("train");
    if (!train.is_object()) fail_data("config error: \"train\" must be an object");
    check_keys(train, "train", {"batch_size", "learning_rate", "max_epochs", "patience"});
    read_size(train, "train", "batch_size", cfg.train.batch_size);
    read_double(train, "train", "learning_rate", cfg.train.learning_rate);
    read_size(train, "train", "max_epochs", cfg.train.max_epochs);
    read_size(train, "train", "patience", cfg.train.patience);
  }

  if (doc.contains("noise")) {
    const json& noise = doc.at("noise");
    if (!noise.is_object()) fail_data("config error: \"noise\" must be an object");
    check_keys(noise, "noise",
               {"percentile", "samples", "clip", "clip_low", "clip_high",
                "sigma_override", "pair_budget"});
    read_double(noise, "noise", "percentile", cfg.percentile);
    read_size(noise, "noise", "samples", cfg.noise_samples);
    read_bool(noise, "noise", "clip", cfg.clip);
    read_double(noise, "noise", "clip_low", cfg.clip_low);
    read_double(noise, "noise", "clip_high", cfg.clip_high);
    if (noise.contains("sigma_override") && !noise.at("sigma_override").is_null()) {
      cfg.has_sigma_override = true;
      read_double(noise, "noise", "sigma_override", cfg.sigma_override);
    }
    read_size(noise, "noise", "pair_budget", cfg.pair_budget);
  }

  if (doc.contains("split")) {
    const json& split = doc.at("split");
    if (!split.is_object()) fail_data("config error: \"split\" must be an object");
    check_keys(split, "split", {"train", "val", "test"});
    read_double(split, "split", "train", cfg.split.train_fraction);
    read_double(split, "split", "val", cfg.split.val_fraction);
    read_double(split, "split", "test", cfg.split.test_fraction);
  }

  read_size(doc, "", "anchors_per_class", cfg.anchors_per_class);

  if (doc.contains("seeds")) {
    const json& seeds = doc.at("seeds");
    if (!seeds.is_array()) fail_data("config error: \"seeds\" must be an array");
    cfg.seeds.clear();
    for (const json& v : seeds) {
      if (!v.is_number_integer() && !v.is_number_unsigned()) {
        fail_data("config error: \"seeds\" entries must be integers");
      }
      if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
        fail_data("config error: \"seeds\" entries must be non-negative");
      }
      cfg.seeds.push_back(v.get<std::uint64_t>());
    }
  }

  if (doc.contains("render_modes")) {
    const json& modes = doc.at("render_modes");
    if (!modes.is_array()) fail_data("config error: \"render_modes\" must be an array");
    cfg.render_modes.clear();
    for (const json& v : modes) {
      if (!v.is_string()) {
        fail_data("config error: \"render_modes\" entries must be strings");
      }
      cfg.render_modes.push_back(render_mode_from_name(v.get<std::string>()));
    }
  }

  read_double(doc, "", "ellipse_scale", cfg.ellipse_scale);
  read_size(doc, "", "max_background", cfg.max_background);

  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  return pipeline_config_from_json(load_json(path));
}

nlohmann::json pipeline_config_to_json(const PipelineConfig& cfg) {
  json doc;
  doc["data"] = cfg.data_path;
  doc["labels"] = cfg.labels_path;
  doc["reference"] = cfg.reference_path;
  doc["output_dir"] = cfg.output_dir;
  if (cfg.widths.empty()) {
    doc["architecture"] = cfg.preset;
  } else {
    doc["architecture"] = cfg.widths;
  }
  doc["lambda"] = cfg.lambda;
  doc["train"] = {{"batch_size", cfg.train.batch_size},
                  {"learning_rate", cfg.train.learning_rate},
                  {"max_epochs", cfg.train.max_epochs},
                  {"patience", cfg.train.patience}};
  doc["noise"] = {{"percentile", cfg.percentile},
                  {"samples", cfg.noise_samples},
                  {"clip", cfg.clip},
                  {"clip_low", cfg.clip_low},
                  {"clip_high", cfg.clip_high},
                  {"sigma_override",
                   cfg.has_sigma_override ? json(cfg.sigma_override) : json(nullptr)},
                  {"pair_budget", cfg.pair_budget}};
  doc["split"] = {{"train", cfg.split.train_fraction},
                  {"val", cfg.split.val_fraction},
                  {"test", cfg.split.test_fraction}};
  doc["anchors_per_class"] = cfg.anchors_per_class;
  doc["seeds"] = cfg.seeds;
  json modes = json::array();
  for (const RenderMode mode : cfg.render_modes) {
    modes.push_back(render_mode_name(mode));
  }
  doc["render_modes"] = modes;
  doc["ellipse_scale"] = cfg.ellipse_scale;
  doc["max_background"] = cfg.max_background;
  return doc;
}

}  // namespace pstab
