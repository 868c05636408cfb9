#pragma once

#include <cstdint>
#include <random>

namespace regime_split {

// Stable (seed, stream) -> engine-seed mapping: golden-ratio offset per
// stream followed by the splitmix64 finalizer. Documented in
// docs/formats.md so other implementations can reproduce the streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// Deterministic per-stream generator: mt19937_64 seeded via mix_seed,
// uniforms from the top 53 bits, normals via the Box-Muller transform.
// std::normal_distribution is implementation-defined, so the transform
// is spelled out here to keep outputs identical across toolchains.
class rng_stream {
 public:
  rng_stream(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix_seed(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1].
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace regime_split
