#include "supralap/rng.hpp"

namespace supralap {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t KeyedRng::engine_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

KeyedRng::KeyedRng(std::uint64_t seed, std::uint64_t stream) : engine_(engine_seed(seed, stream)) {}

}  // namespace supralap
