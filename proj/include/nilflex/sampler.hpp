#pragma once

#include <cstdint>
#include <string_view>

namespace nilflex {

/// Deterministic integer sampler (splitmix64). Used instead of <random>
/// distributions so that sampled points are identical across standard
/// libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next() % span);
  }

 private:
  std::uint64_t state_;
};

/// Mixes a label into a seed (FNV-1a over the label, then splitmix).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  Sampler s(seed ^ h);
  return s.next();
}

}  // namespace nilflex
