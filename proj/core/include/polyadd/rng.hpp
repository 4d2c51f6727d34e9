#pragma once

#include <cstdint>
#include <random>

namespace polyadd {

// Deterministic sample source. mt19937_64 has a standard-mandated stream, and
// the u64 -> [0,1) mapping is spelled out here instead of going through
// std::uniform_real_distribution, whose algorithm is implementation-defined.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * u01(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace polyadd
