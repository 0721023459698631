#pragma once

// Seeded, stream-indexed RNG for reproducible parallel Monte Carlo. Each
// (seed, stream_index) pair owns a statistically independent sequence; the
// mapping is a pure function of the two integers, so ensembles aggregated
// over a fixed stream partition are identical no matter how many workers
// execute them.
//
// The engine is std::mt19937_64 (its output sequence is pinned by the
// standard). Conversions to doubles are done explicitly here because the
// stdlib distribution objects are implementation-defined.

#include <cstdint>
#include <random>

namespace bhp {

class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_index) {
    std::seed_seq seq{
        static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
        static_cast<uint32_t>(stream_index), static_cast<uint32_t>(stream_index >> 32)};
    eng_.seed(seq);
  }

  uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (explicit, platform-stable).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double c = std::cos(6.283185307179586476925286766559 * u2);
    const double s = std::sin(6.283185307179586476925286766559 * u2);
    spare_ = r * s;
    has_spare_ = true;
    return r * c;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bhp
