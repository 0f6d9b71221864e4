#pragma once

#include <cstdint>
#include <random>

namespace lbentropy {

/// splitmix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for stream (master, cell, replicate). Each key component is folded
/// through the mixer so neighbouring keys give unrelated seeds.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t cell,
                                    std::uint64_t replicate) noexcept {
  return mix64(mix64(mix64(master) ^ cell) ^ replicate);
}

/// A seeded uniform source. Conversion to doubles is done here rather than by
/// std::uniform_real_distribution, whose output is implementation-defined.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_replicate(std::uint64_t master, std::uint64_t cell,
                                    std::uint64_t replicate) {
    return RandomStream(stream_seed(master, cell, replicate));
  }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

private:
  std::mt19937_64 engine_;
};

/// FNV-1a over bytes; stable across platforms (unlike std::hash).
std::uint64_t fnv1a(const void* data, std::size_t len,
                    std::uint64_t h = 0xcbf29ce484222325ULL) noexcept;

}  // namespace lbentropy
