#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace gamelab {

/// SplitMix64 stream keyed by (master_seed, session_id). Sessions own disjoint
/// streams, so ensembles are reproducible independently of evaluation order,
/// and the output does not depend on libstdc++ distribution internals.
class SessionRng {
 public:
  SessionRng(std::uint64_t master_seed, std::uint64_t session_id)
      : state_(mix(master_seed + 0x9E3779B97F4A7C15ULL * session_id)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform point on the 8-simplex (flat Dirichlet via exponential spacings).
  std::array<double, 8> next_simplex8() {
    std::array<double, 8> v{};
    double sum = 0.0;
    for (double& e : v) {
      e = -std::log(1.0 - next_unit());  // argument is in (0, 1], log is finite
      sum += e;
    }
    for (double& e : v) e /= sum;
    return v;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace gamelab
