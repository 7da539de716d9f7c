#include "pstab/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pstab/error.hpp"
#include "pstab/rng.hpp"

namespace pstab {

void SplitSpec::validate() const {
  if (train_fraction <= 0.0 || val_fraction <= 0.0 || test_fraction <= 0.0) {
    fail_data("configuration error: split fractions must all be positive");
  }
  const double sum = train_fraction + val_fraction + test_fraction;
  if (std::abs(sum - 1.0) > 1e-12) {
    fail_data("configuration error: split fractions sum to " + std::to_string(sum) +
              ", expected 1.0");
  }
}

SplitIndices split_dataset(const Matrix& data, const Labels& labels,
                           const SplitSpec& spec) {
  spec.validate();
  const std::size_t n = data.rows;
  if (labels.size() != n) {
    fail_data("validation error: labels length " + std::to_string(labels.size()) +
              " does not match data rows " + std::to_string(n));
  }
  if (n < 10) {
    fail_data("configuration error: need at least 10 rows to split, got " +
              std::to_string(n));
  }

  const auto nf = static_cast<double>(n);
  const std::size_t n_val = static_cast<std::size_t>(std::floor(spec.val_fraction * nf));
  const std::size_t n_test = static_cast<std::size_t>(std::floor(spec.test_fraction * nf));
  if (n_val == 0 || n_test == 0 || n_val + n_test >= n) {
    fail_data("configuration error: split produces an empty subset for n=" +
              std::to_string(n));
  }
  const std::size_t n_train = n - n_val - n_test;

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RandomStream stream(stream_key(spec.seed, StreamTag::split_shuffle));
  stream.shuffle(perm);

  SplitIndices out;
  out.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.val.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train),
                 perm.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  out.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), perm.end());
  return out;
}

Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& indices) {
  Matrix out(indices.size(), m.cols);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = m.row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace pstab
