#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pstab/labels.hpp"
#include "pstab/matrix.hpp"

namespace pstab {

// One probe anchor: a dataset sample chosen near its class centroid in the
// reference embedding. embed_z is the embedding's coordinate for the sample
// and is used for selection and export only; stability metrics project x0
// through the trained network instead.
struct AnchorEntry {
  std::size_t row = 0;
  int class_id = 0;
  std::vector<double> x0;
  std::array<double, 2> embed_z{0.0, 0.0};
};

struct AnchorSet {
  std::vector<AnchorEntry> entries;
  std::size_t anchors_per_class = 1;
};

// Arithmetic mean of the embedded points of each class.
std::vector<std::array<double, 2>> class_centroids(const Matrix& embedding,
                                                   const Labels& labels);

// Per class, the per_class samples whose embedded points lie nearest to the
// class centroid (ties to the smaller dataset index).
AnchorSet select_anchors(const Matrix& data, const Matrix& embedding,
                         const Labels& labels, std::size_t per_class);

// CSV export: header "index,class,z0x,z0y", one line per anchor.
void write_anchor_csv(const AnchorSet& anchors, const std::string& path);

}  // namespace pstab
