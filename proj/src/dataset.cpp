#include "ijoin/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ijoin {

std::int64_t SplitMix64::next_in(std::int64_t lo, std::int64_t hi) noexcept {
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == max()) return static_cast<std::int64_t>((*this)());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = max() - max() % range;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
}

void validate(const DatasetSpec& spec) {
  if (!(spec.lambda > 0) || !std::isfinite(spec.lambda)) {
    throw std::invalid_argument("lambda must be a positive finite number");
  }
  if (spec.domain_hi < 1) throw std::invalid_argument("domain_hi must be >= 1");
}

Relation gen_synthetic(const DatasetSpec& spec) {
  validate(spec);
  SplitMix64 rng(spec.seed);
  Relation out;
  out.name = "synthetic";
  out.tuples.reserve(spec.n);
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    const Timestamp ts = rng.next_in(1, spec.domain_hi);
    const double u = rng.next_unit();
    const double sample = -std::log1p(-u) / spec.lambda;
    const Timestamp duration = std::max<Timestamp>(1, std::llround(sample));
    out.add(ts, shift(ts, duration), static_cast<std::uint32_t>(i));
  }
  return out;
}

BatchDataset gen_batch(std::uint64_t m, std::uint64_t a, Timestamp at, Timestamp len) {
  if (at < 1 || len < 1) throw std::invalid_argument("batch start and length must be >= 1");
  BatchDataset out;
  out.r.name = "batch-r";
  out.s.name = "batch-s";
  for (std::uint64_t i = 0; i < a; ++i) out.r.add(at - 1, at + len + 1);
  for (std::uint64_t i = 0; i < m; ++i) out.s.add(at, at + len);
  return out;
}

}  // namespace ijoin
