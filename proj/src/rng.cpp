#include "privgraph/rng.hpp"

#include <stdexcept>

namespace privgraph {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t root, uint64_t stream) {
  return splitmix64(root ^ splitmix64(stream + 0x51ed270b8a1c6d3bull));
}

int64_t rng::uniform_below(int64_t n) {
  if (n <= 0) throw std::invalid_argument("uniform_below: n must be positive");
  const uint64_t un = static_cast<uint64_t>(n);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int64_t>(x % un);
}

}  // namespace privgraph
