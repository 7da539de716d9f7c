#include "pstab/report.hpp"

#include <algorithm>
#include <cmath>

#include "pstab/canonical_json.hpp"
#include "pstab/error.hpp"
#include "pstab/version.hpp"

namespace pstab {

namespace {

using nlohmann::json;

json aggregate_json(const std::vector<double>& values) {
  const MetricAggregate agg = aggregate_values(values);
  return {{"mean", agg.mean}, {"std", agg.std_dev}};
}

}  // namespace

MetricAggregate aggregate_values(const std::vector<double>& values) {
  if (values.empty()) {
    fail_data("report error: cannot aggregate an empty metric list");
  }
  MetricAggregate agg;
  double sum = 0.0;
  for (const double v : values) sum += v;
  agg.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) return agg;
  double sq = 0.0;
  for (const double v : values) sq += (v - agg.mean) * (v - agg.mean);
  agg.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return agg;
}

std::string config_hash(const PipelineConfig& cfg) {
  return canonical_hash_hex(pipeline_config_to_json(cfg));
}

nlohmann::json build_report(const PipelineConfig& cfg,
                            std::vector<SeedFragment> fragments) {
  if (fragments.empty()) {
    fail_data("report error: no fragments to aggregate");
  }
  std::sort(fragments.begin(), fragments.end(),
            [](const SeedFragment& a, const SeedFragment& b) { return a.seed < b.seed; });
  for (std::size_t i = 1; i < fragments.size(); ++i) {
    if (fragments[i].seed == fragments[i - 1].seed) {
      fail_data("report error: duplicate fragment for seed " +
                std::to_string(fragments[i].seed));
    }
  }

  std::vector<double> mse, t_avg, c_avg, d_dev, d_bias, e_na, r, sigma, r_eff;
  json failed_seeds = json::array();
  for (const SeedFragment& frag : fragments) {
    if (frag.failed) {
      failed_seeds.push_back(frag.seed);
      continue;
    }
    mse.push_back(frag.mse);
    t_avg.push_back(frag.t_avg);
    c_avg.push_back(frag.c_avg);
    d_dev.push_back(frag.d_dev_mean);
    d_bias.push_back(frag.d_bias_mean);
    e_na.push_back(frag.e_na);
    r.push_back(frag.r);
    sigma.push_back(frag.sigma);
    r_eff.push_back(frag.r_eff_mean);
  }
  if (mse.empty()) {
    fail_data("report error: every seed failed, nothing to aggregate");
  }

  json doc;
  doc["schema"] = kReportSchema;
  doc["tool_version"] = kToolVersion;
  doc["config_hash"] = config_hash(cfg);
  doc["config"] = pipeline_config_to_json(cfg);
  doc["aggregate"] = {{"mse", aggregate_json(mse)},
                      {"t_avg", aggregate_json(t_avg)},
                      {"c_avg", aggregate_json(c_avg)},
                      {"d_dev", aggregate_json(d_dev)},
                      {"d_bias", aggregate_json(d_bias)},
                      {"e_na", aggregate_json(e_na)}};
  doc["noise"] = {{"r", aggregate_json(r)},
                  {"sigma", aggregate_json(sigma)},
                  {"r_eff", aggregate_json(r_eff)}};
  json seeds = json::array();
  for (const SeedFragment& frag : fragments) {
    seeds.push_back(fragment_to_json(frag));
  }
  doc["seeds"] = seeds;
  doc["seed_count"] = fragments.size();
  doc["successful_seeds"] = mse.size();
  doc["failed_seeds"] = failed_seeds;
  return doc;
}

void write_report(const nlohmann::json& report, const std::string& path) {
  write_canonical_json(report, path);
}

}  // namespace pstab
