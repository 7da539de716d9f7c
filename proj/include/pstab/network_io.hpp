#pragma once

#include <string>

#include "pstab/network.hpp"

namespace pstab {

// Network container format: magic "PSTN", u32 version (1), u32 layer count,
// then layer_count+1 u64 widths, then per layer the weight matrix
// (out x in, row-major f64) followed by the bias vector (out f64), then a
// u64 length-prefixed UTF-8 JSON metadata blob. All fields little-endian.
struct NetworkFile {
  Network net;
  std::string metadata_json;
};

void save_network(const Network& net, const std::string& path,
                  const std::string& metadata_json);
NetworkFile load_network(const std::string& path);

}  // namespace pstab
