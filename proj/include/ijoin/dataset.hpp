#pragma once

#include <cstdint>

#include "ijoin/core.hpp"

namespace ijoin {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
/// the xor-shift-multiply finalizer. Part of the dataset format: the same seed
/// yields the same relation on every platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double next_unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi] by rejection, no modulo bias.
  std::int64_t next_in(std::int64_t lo, std::int64_t hi) noexcept;

 private:
  std::uint64_t state_;
};

struct DatasetSpec {
  std::uint64_t n = 0;
  double lambda = 0.1;
  Timestamp domain_hi = 1'000'000;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument unless lambda > 0 and domain_hi >= 1.
void validate(const DatasetSpec& spec);

/// n tuples with Ts uniform in [1, domain_hi] and duration
/// max(1, llround(Exp(lambda))). Per tuple: one draw for Ts, then one for
/// the duration (inverse CDF of u in [0, 1)). Payload is the tuple id.
Relation gen_synthetic(const DatasetSpec& spec);

/// m tuples of s all starting at `at` (length `len`) and a tuples of r
/// covering them: the clustered shape behind the lazy-buffer counting
/// argument.
struct BatchDataset {
  Relation r;
  Relation s;
};
BatchDataset gen_batch(std::uint64_t m, std::uint64_t a, Timestamp at = 10, Timestamp len = 5);

}  // namespace ijoin
