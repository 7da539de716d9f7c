#pragma once

#include <cstdint>
#include <vector>

#include "pstab/labels.hpp"
#include "pstab/matrix.hpp"

namespace pstab {

struct SplitSpec {
  double train_fraction = 0.8;
  double val_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

// Disjoint index lists covering all rows. Val and test get floor(fraction*n)
// rows, the remainder goes to train. The permutation depends only on the seed.
SplitIndices split_dataset(const Matrix& data, const Labels& labels,
                           const SplitSpec& spec);

Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& indices);

}  // namespace pstab
