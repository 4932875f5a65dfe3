#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace qmetric {

/// Seeded generator with portable output.
///
/// std::mt19937_64's raw sequence is fixed by the standard, but the standard
/// distributions are not, so the conversions to doubles live here. The same
/// seed gives the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (no cached spare, so the stream position
  /// depends only on the number of calls).
  double normal();

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Independent stream seed for worker/shard `stream` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qmetric
