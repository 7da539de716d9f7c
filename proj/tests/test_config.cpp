#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "pstab/canonical_json.hpp"
#include "pstab/config.hpp"
#include "pstab/error.hpp"
#include "support/tempdir.hpp"

using nlohmann::json;
using pstab::PipelineConfig;

TEST_CASE("empty document yields the documented defaults") {
  const PipelineConfig cfg = pstab::pipeline_config_from_json(json::object());
  CHECK(cfg.preset == "mlp-small");
  CHECK(cfg.widths.empty());
  CHECK(cfg.lambda == 0.0);
  CHECK(cfg.train.batch_size == 256);
  CHECK(cfg.train.learning_rate == 1e-3);
  CHECK(cfg.percentile == 0.25);
  CHECK(cfg.noise_samples == 2000);
  CHECK(!cfg.clip);
  CHECK(!cfg.has_sigma_override);
  CHECK(cfg.anchors_per_class == 1);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(cfg.render_modes.size() == 3);
  CHECK(cfg.ellipse_scale == 2.0);
  CHECK(cfg.max_background == 20000);
  CHECK(cfg.split.train_fraction == 0.8);
}

TEST_CASE("unknown keys are rejected with their path") {
  json doc;
  doc["lambduh"] = 10.0;
  CHECK_THROWS_WITH_AS(pstab::pipeline_config_from_json(doc),
                       "config error: unknown key \"lambduh\"", pstab::Error);
  json nested;
  nested["train"] = {{"batch_size", 32}, {"momentum", 0.9}};
  CHECK_THROWS_WITH_AS(pstab::pipeline_config_from_json(nested),
                       "config error: unknown key \"train.momentum\"", pstab::Error);
  json noise;
  noise["noise"] = {{"sigma", 0.1}};
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(noise), pstab::Error);
}

TEST_CASE("type errors are rejected") {
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json::array()), pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"lambda", "ten"}}),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"seeds", 3}}), pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"train", 3}}), pstab::Error);
  CHECK_THROWS_AS(
      pstab::pipeline_config_from_json(json{{"train", {{"batch_size", -1}}}}),
      pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"seeds", {1, -2}}}),
                  pstab::Error);
}

TEST_CASE("architecture accepts presets and explicit widths") {
  PipelineConfig small =
      pstab::pipeline_config_from_json(json{{"architecture", "mlp-large"}});
  CHECK(small.preset == "mlp-large");

  PipelineConfig custom =
      pstab::pipeline_config_from_json(json{{"architecture", {50, 16, 2}}});
  CHECK(custom.widths == std::vector<std::size_t>{50, 16, 2});
  CHECK(custom.preset.empty());

  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"architecture", "resnet"}}),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"architecture", {50, 16, 3}}}),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"architecture", {50, 0, 2}}}),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"architecture", 5}}),
                  pstab::Error);
}

TEST_CASE("seed lists must be nonempty and distinct") {
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"seeds", json::array()}}),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"seeds", {1, 2, 1}}}),
                  pstab::Error);
  const PipelineConfig cfg = pstab::pipeline_config_from_json(json{{"seeds", {5, 9}}});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{5, 9});
}

TEST_CASE("sigma override supports zero and null") {
  const PipelineConfig zero = pstab::pipeline_config_from_json(
      json{{"noise", {{"sigma_override", 0.0}}}});
  CHECK(zero.has_sigma_override);
  CHECK(zero.sigma_override == 0.0);

  const PipelineConfig null_case = pstab::pipeline_config_from_json(
      json{{"noise", {{"sigma_override", nullptr}}}});
  CHECK(!null_case.has_sigma_override);

  CHECK_THROWS_AS(pstab::pipeline_config_from_json(
                      json{{"noise", {{"sigma_override", -0.5}}}}),
                  pstab::Error);
}

TEST_CASE("range validation") {
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"lambda", -1.0}}),
                  pstab::Error);
  CHECK_THROWS_AS(
      pstab::pipeline_config_from_json(json{{"noise", {{"percentile", 0.0}}}}),
      pstab::Error);
  CHECK_THROWS_AS(
      pstab::pipeline_config_from_json(
          json{{"noise", {{"clip_low", 1.0}, {"clip_high", 0.5}}}}),
      pstab::Error);
  CHECK_THROWS_AS(
      pstab::pipeline_config_from_json(
          json{{"split", {{"train", 0.5}, {"val", 0.2}, {"test", 0.2}}}}),
      pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"ellipse_scale", 0.0}}),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"anchors_per_class", 0}}),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"max_background", 0}}),
                  pstab::Error);
}

TEST_CASE("render mode lists") {
  const PipelineConfig none =
      pstab::pipeline_config_from_json(json{{"render_modes", json::array()}});
  CHECK(none.render_modes.empty());
  const PipelineConfig one =
      pstab::pipeline_config_from_json(json{{"render_modes", {"voronoi"}}});
  REQUIRE(one.render_modes.size() == 1);
  CHECK(one.render_modes[0] == pstab::RenderMode::voronoi);
  CHECK_THROWS_AS(pstab::pipeline_config_from_json(json{{"render_modes", {"square"}}}),
                  pstab::Error);
}

TEST_CASE("json round trip is lossless") {
  json doc;
  doc["data"] = "x.csv";
  doc["labels"] = "y.csv";
  doc["reference"] = "ref.csv";
  doc["output_dir"] = "out";
  doc["architecture"] = {8, 16, 2};
  doc["lambda"] = 10.0;
  doc["train"] = {{"batch_size", 64}, {"learning_rate", 0.01}, {"max_epochs", 20},
                  {"patience", 4}};
  doc["noise"] = {{"percentile", 0.5}, {"samples", 100}, {"clip", true},
                  {"clip_low", -1.0}, {"clip_high", 1.0}, {"sigma_override", 0.2},
                  {"pair_budget", 5000}};
  doc["split"] = {{"train", 0.6}, {"val", 0.2}, {"test", 0.2}};
  doc["anchors_per_class"] = 2;
  doc["seeds"] = {4, 2};
  doc["render_modes"] = {"local_pca"};
  doc["ellipse_scale"] = 1.5;
  doc["max_background"] = 500;

  const PipelineConfig cfg = pstab::pipeline_config_from_json(doc);
  const json emitted = pipeline_config_to_json(cfg);
  const PipelineConfig reparsed = pstab::pipeline_config_from_json(emitted);
  CHECK(pstab::canonical_json(emitted) ==
        pstab::canonical_json(pipeline_config_to_json(reparsed)));
  CHECK(cfg.widths == reparsed.widths);
  CHECK(cfg.sigma_override == reparsed.sigma_override);
  CHECK(cfg.clip == reparsed.clip);
  CHECK(cfg.seeds == reparsed.seeds);
}

TEST_CASE("loads from a file") {
  testsupport::TempDir dir;
  const std::string path = dir.file("cfg.json");
  testsupport::write_text(path, R"({"lambda": 10, "seeds": [3]})");
  const PipelineConfig cfg = pstab::load_pipeline_config(path);
  CHECK(cfg.lambda == 10.0);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{3});
  testsupport::write_text(path, "{");
  CHECK_THROWS_AS(pstab::load_pipeline_config(path), pstab::Error);
}
