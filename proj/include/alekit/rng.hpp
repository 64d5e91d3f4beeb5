#pragma once

#include <cmath>
#include <cstdint>

namespace alekit {

// Derives the seed for iteration i of a seeded loop. Every loop in the engine
// (bootstrap iterations, random reference variables) draws its own generator
// from this, so results do not depend on execution order or thread count.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t i) {
  constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  return master_seed ^ (golden * (i + 1));
}

// Distinct generator purposes map to distinct pcg32 sequence selectors, so the
// same seed never produces correlated draws for unrelated jobs.
enum class rng_purpose : std::uint64_t {
  resample      = 1,
  random_column = 2,
  general       = 3,
};

// pcg32 (O'Neill's minimal PCG variant): 64-bit state, 32-bit output with an
// xorshift-rotate output function. Chosen over std::mt19937 because its output
// is defined bit-for-bit by the algorithm alone, giving identical streams on
// every platform and standard library.
class pcg32 {
 public:
  pcg32(std::uint64_t initstate, std::uint64_t initseq) {
    state_ = 0u;
    inc_ = (initseq << 1u) | 1u;
    next_u32();
    state_ += initstate;
    next_u32();
  }

  pcg32(std::uint64_t seed, rng_purpose purpose)
      : pcg32(seed, static_cast<std::uint64_t>(purpose)) {}

  std::uint32_t next_u32() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  // Uniform integer in [0, bound) by rejection, so every value is exactly
  // equally likely regardless of bound.
  std::uint32_t next_below(std::uint32_t bound) {
    std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      std::uint32_t r = next_u32();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in (0, 1]: the +1 keeps log() in Box-Muller off zero.
  double next_unit_open_closed() {
    return (static_cast<double>(next_u32()) + 1.0) * (1.0 / 4294967296.0);
  }

  // Uniform double in [0, 1).
  double next_unit_half_open() {
    return static_cast<double>(next_u32()) * (1.0 / 4294967296.0);
  }

  // Standard normal via Box-Muller. The polar/ziggurat alternatives consume a
  // data-dependent number of uniforms; the trigonometric form keeps the stream
  // position deterministic, which the reproducibility contract needs.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_unit_open_closed();
    double u2 = next_unit_half_open();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace alekit
