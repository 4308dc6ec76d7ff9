#pragma once

#include <cstdint>
#include <random>

namespace ymlab {

// Seeded stream with deterministic child derivation; children of distinct
// indices never share a seed with each other or with the parent.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  RandomStream child(std::uint64_t index) const;

  double uniform();  // [0, 1)
  double normal();   // standard normal
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ymlab
