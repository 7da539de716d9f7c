#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pstab/config.hpp"
#include "pstab/pipeline.hpp"

namespace pstab {

struct MetricAggregate {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (n-1); 0 for one value
};

MetricAggregate aggregate_values(const std::vector<double>& values);

// 16 hex digits over the canonical form of the full effective configuration.
std::string config_hash(const PipelineConfig& cfg);

// Multi-seed report: per-seed fragments in ascending seed order plus
// mean and sample std of every headline metric over the successful runs.
// Failed seeds are listed, never averaged. At least one run must succeed.
nlohmann::json build_report(const PipelineConfig& cfg,
                            std::vector<SeedFragment> fragments);

void write_report(const nlohmann::json& report, const std::string& path);

}  // namespace pstab
