#pragma once

#include <cstddef>
#include <vector>

namespace pstab {

// Integer class ids, contiguous in 0..class_count-1. When the source file
// contains gaps the ids are remapped and the original ids are kept in
// original_ids (remapped id -> original id).
struct Labels {
  std::vector<int> values;
  int class_count = 0;
  std::vector<long long> original_ids;

  std::size_t size() const { return values.size(); }
};

}  // namespace pstab
