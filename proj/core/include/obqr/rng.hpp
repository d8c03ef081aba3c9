#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace obqr {

/// Reproducible random stream used by the test-matrix generators.
///
/// The bit stream is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Everything layered on top is defined here rather than by the
/// standard library so CSV outputs are identical across toolchains:
///
///  - uniform(): (x >> 11) + 0.5 scaled by 2^-53, a value in the open interval (0, 1);
///  - normal(): Box-Muller on two consecutive uniforms u1, u2, returning
///    sqrt(-2 ln u1) cos(2 pi u2) and caching sqrt(-2 ln u1) sin(2 pi u2) for
///    the next call;
///  - substream(seed, id): seeds the engine with splitmix64(seed ^ splitmix64(id)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace obqr
