#pragma once

#include <cstdint>
#include <random>

namespace supralap {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x);

/// Per-layer random stream: std::mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(stream + 1)). Uniform doubles use the top 53 bits,
/// so the sequence is fixed by the C++ standard and portable across libraries.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  static std::uint64_t engine_seed(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace supralap
