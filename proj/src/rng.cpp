#include "pstab/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace pstab {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

// splitmix64 finalizer (Steele, Lea, Flood).
std::uint64_t RandomStream::mix(std::uint64_t x) {
  std::uint64_t z = x + kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t RandomStream::derive_key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t key = 0x8e51'ecb4'd17a'9c3bULL;
  for (std::uint64_t p : parts) {
    key = mix(key ^ mix(p));
  }
  return key;
}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix(key_ + counter_ * kGolden);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound < 2) return 0;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
  for (;;) {
    const std::uint64_t v = next_u64() & mask;
    if (v < bound) return v;
  }
}

}  // namespace pstab
