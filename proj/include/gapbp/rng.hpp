#pragma once

#include <cstdint>
#include <random>

namespace gapbp {

/// Deterministic random source. std::mt19937_64 produces an identical
/// stream on every platform, but the standard distributions do not, so the
/// sampling helpers below implement their own fixed mappings.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], endpoints included. Rejection sampling,
  /// so the result is unbiased and reproducible across platforms.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(engine_());  // full range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % range);
  }

  /// Uniform real in [lo, hi) with 53-bit resolution.
  double uniform_real(double lo, double hi) {
    const double unit =
        static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + unit * (hi - lo);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gapbp
