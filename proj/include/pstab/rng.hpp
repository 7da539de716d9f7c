#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace pstab {

// Counter-based deterministic random stream. Draw i is a pure function of
// (key, i), so values are independent of evaluation order and thread
// scheduling. Keys are derived from (seed, purpose tag, indices), which keeps
// per-anchor and per-epoch streams reproducible on their own.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t x);
  static std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double uniform();

  // Standard normal via Box-Muller (cosine branch); two draws per value.
  double normal();

  // Uniform integer in [0, bound), unbiased via masked rejection.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i > 0; --i) {
      const std::size_t j =
          static_cast<std::size_t>(uniform_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(items[i], items[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream purpose tags; part of the persistent on-disk reproducibility story,
// so values must not be reordered.
enum class StreamTag : std::uint64_t {
  init_weights = 1,
  split_shuffle = 2,
  epoch_shuffle = 3,
  perturb = 4,
  pair_sample = 5,
  background_sample = 6,
  synthetic = 7,
};

inline std::uint64_t stream_key(std::uint64_t seed, StreamTag tag,
                                std::uint64_t a = 0, std::uint64_t b = 0) {
  return RandomStream::derive_key({seed, static_cast<std::uint64_t>(tag), a, b});
}

}  // namespace pstab
