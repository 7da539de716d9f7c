#include "pstab/anchors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "pstab/error.hpp"

namespace pstab {

namespace {

void check_embedding(const Matrix& embedding, const Labels& labels) {
  if (embedding.cols != 2) {
    fail_data("validation error: embedding must have 2 columns, got " +
              std::to_string(embedding.cols));
  }
  if (embedding.rows != labels.size()) {
    fail_data("validation error: embedding rows " + std::to_string(embedding.rows) +
              " do not match labels length " + std::to_string(labels.size()));
  }
  if (labels.class_count < 1) {
    fail_data("validation error: labels declare no classes");
  }
}

}  // namespace

std::vector<std::array<double, 2>> class_centroids(const Matrix& embedding,
                                                   const Labels& labels) {
  check_embedding(embedding, labels);
  const auto classes = static_cast<std::size_t>(labels.class_count);
  std::vector<std::array<double, 2>> sums(classes, {0.0, 0.0});
  std::vector<std::size_t> counts(classes, 0);
  for (std::size_t i = 0; i < embedding.rows; ++i) {
    const auto c = static_cast<std::size_t>(labels.values[i]);
    if (c >= classes) {
      fail_data("validation error: label " + std::to_string(labels.values[i]) +
                " outside declared class count");
    }
    sums[c][0] += embedding.at(i, 0);
    sums[c][1] += embedding.at(i, 1);
    ++counts[c];
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (counts[c] == 0) {
      fail_data("selection error: class " + std::to_string(c) + " has no samples");
    }
    sums[c][0] /= static_cast<double>(counts[c]);
    sums[c][1] /= static_cast<double>(counts[c]);
  }
  return sums;
}

AnchorSet select_anchors(const Matrix& data, const Matrix& embedding,
                         const Labels& labels, std::size_t per_class) {
  check_embedding(embedding, labels);
  if (data.rows != embedding.rows) {
    fail_data("validation error: data rows " + std::to_string(data.rows) +
              " do not match embedding rows " + std::to_string(embedding.rows));
  }
  if (per_class < 1) {
    fail_data("configuration error: anchors per class must be >= 1");
  }

  const auto centroids = class_centroids(embedding, labels);
  const auto classes = static_cast<std::size_t>(labels.class_count);

  AnchorSet set;
  set.anchors_per_class = per_class;
  for (std::size_t c = 0; c < classes; ++c) {
    // (squared distance to centroid, row index), ties resolved by the index
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t i = 0; i < embedding.rows; ++i) {
      if (static_cast<std::size_t>(labels.values[i]) != c) continue;
      const double dx = embedding.at(i, 0) - centroids[c][0];
      const double dy = embedding.at(i, 1) - centroids[c][1];
      candidates.emplace_back(dx * dx + dy * dy, i);
    }
    if (candidates.size() < per_class) {
      fail_data("selection error: class " + std::to_string(c) + " has " +
                std::to_string(candidates.size()) + " samples, need " +
                std::to_string(per_class));
    }
    std::sort(candidates.begin(), candidates.end());
    for (std::size_t k = 0; k < per_class; ++k) {
      const std::size_t row = candidates[k].second;
      AnchorEntry entry;
      entry.row = row;
      entry.class_id = static_cast<int>(c);
      entry.x0.assign(data.row(row).begin(), data.row(row).end());
      entry.embed_z = {embedding.at(row, 0), embedding.at(row, 1)};
      set.entries.push_back(std::move(entry));
    }
  }

  for (std::size_t a = 0; a < set.entries.size(); ++a) {
    for (std::size_t b = a + 1; b < set.entries.size(); ++b) {
      if (set.entries[a].embed_z == set.entries[b].embed_z) {
        fail_data("selection error: anchors " + std::to_string(a) + " and " +
                  std::to_string(b) + " share the same embedded location");
      }
    }
  }
  return set;
}

void write_anchor_csv(const AnchorSet& anchors, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail_data("data error: cannot open " + path + " for writing");
  out << "index,class,z0x,z0y\n";
  char buf[64];
  for (const AnchorEntry& entry : anchors.entries) {
    out << entry.row << "," << entry.class_id;
    for (double v : entry.embed_z) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << "," << buf;
    }
    out << "\n";
  }
  if (!out) fail_data("data error: failed while writing " + path);
}

}  // namespace pstab
