#pragma once

#include <cstdint>

#include "pstab/labels.hpp"
#include "pstab/matrix.hpp"

namespace pstab {

// Isotropic Gaussian class blobs with a linear 2D reference embedding.
// Class centers are N(0, center_std^2 I); points add N(0, noise_std^2 I).
struct BlobSpec {
  std::size_t classes = 10;
  std::size_t samples = 2000;
  std::size_t dim = 50;
  double center_std = 3.0;
  double noise_std = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticData {
  Matrix points;     // samples x dim
  Labels labels;     // round-robin class assignment
  Matrix reference;  // samples x 2, points projected onto an orthonormal pair
};

SyntheticData make_blobs(const BlobSpec& spec);

}  // namespace pstab
