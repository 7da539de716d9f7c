#include "pstab/synthetic.hpp"

#include <cmath>
#include <string>

#include "pstab/error.hpp"
#include "pstab/rng.hpp"

namespace pstab {

void BlobSpec::validate() const {
  if (classes < 1) fail_data("synthetic error: need at least one class");
  if (dim < 2) fail_data("synthetic error: need at least 2 dimensions");
  if (samples < classes) {
    fail_data("synthetic error: fewer samples than classes, " +
              std::to_string(samples) + " < " + std::to_string(classes));
  }
  if (!(center_std > 0.0)) fail_data("synthetic error: center spread must be positive");
  if (!(noise_std > 0.0)) fail_data("synthetic error: noise spread must be positive");
}

SyntheticData make_blobs(const BlobSpec& spec) {
  spec.validate();

  RandomStream center_stream(stream_key(spec.seed, StreamTag::synthetic, 0));
  Matrix centers(spec.classes, spec.dim);
  for (double& v : centers.values) v = spec.center_std * center_stream.normal();

  SyntheticData data;
  data.points = Matrix(spec.samples, spec.dim);
  data.labels.values.resize(spec.samples);
  data.labels.class_count = static_cast<int>(spec.classes);
  data.labels.original_ids.resize(spec.samples);

  for (std::size_t i = 0; i < spec.samples; ++i) {
    const std::size_t cls = i % spec.classes;
    data.labels.values[i] = static_cast<int>(cls);
    data.labels.original_ids[i] = static_cast<long long>(cls);
    RandomStream point_stream(stream_key(spec.seed, StreamTag::synthetic, 1, i));
    for (std::size_t c = 0; c < spec.dim; ++c) {
      data.points.at(i, c) = centers.at(cls, c) + spec.noise_std * point_stream.normal();
    }
  }

  // Orthonormal projection pair by Gram-Schmidt on two Gaussian directions.
  RandomStream axis_stream(stream_key(spec.seed, StreamTag::synthetic, 2));
  std::vector<double> v1(spec.dim);
  std::vector<double> v2(spec.dim);
  for (double& v : v1) v = axis_stream.normal();
  for (double& v : v2) v = axis_stream.normal();
  double norm1 = 0.0;
  for (const double v : v1) norm1 += v * v;
  norm1 = std::sqrt(norm1);
  for (double& v : v1) v /= norm1;
  double proj = 0.0;
  for (std::size_t c = 0; c < spec.dim; ++c) proj += v1[c] * v2[c];
  for (std::size_t c = 0; c < spec.dim; ++c) v2[c] -= proj * v1[c];
  double norm2 = 0.0;
  for (const double v : v2) norm2 += v * v;
  norm2 = std::sqrt(norm2);
  for (double& v : v2) v /= norm2;

  data.reference = Matrix(spec.samples, 2);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    double x = 0.0;
    double y = 0.0;
    for (std::size_t c = 0; c < spec.dim; ++c) {
      x += data.points.at(i, c) * v1[c];
      y += data.points.at(i, c) * v2[c];
    }
    data.reference.at(i, 0) = x;
    data.reference.at(i, 1) = y;
  }
  return data;
}

}  // namespace pstab
