#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sphinterp {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for a sub-stream identified by `keys`, derived from `base`.
/// Deterministic and platform independent.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) noexcept;

/// Seeded 64-bit Mersenne Twister producing doubles in [0, 1).
///
/// The conversion uses the top 53 bits directly instead of
/// std::uniform_real_distribution, whose output is implementation defined,
/// so identical seeds give identical streams on every platform.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sphinterp
