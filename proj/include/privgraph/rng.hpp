#pragma once

#include <cstdint>
#include <random>

namespace privgraph {

// SplitMix64 finalizer; used to derive well-separated child seeds.
uint64_t splitmix64(uint64_t x);

// Deterministic seed for sub-stream `stream` of a root seed. Distinct streams
// give independent-looking generators; the same (root, stream) pair always
// gives the same seed.
uint64_t derive_seed(uint64_t root, uint64_t stream);

// Seeded generator wrapper. All floating-point draws are produced by fixed
// integer-to-double arithmetic on raw mt19937_64 output, so sequences are
// reproducible across platforms and standard libraries for a given seed.
class rng {
 public:
  explicit rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns an exact endpoint.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // Uniform over {0, ..., n-1}; n must be positive.
  int64_t uniform_below(int64_t n);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace privgraph
