#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ijoin/core.hpp"
#include "ijoin/engine.hpp"

namespace ijoin {

/// Sum of r.Ts + s.Ts over all pairs, wrapping on overflow. Order-independent,
/// so eager, lazy and partitioned runs must agree on it.
std::uint64_t checksum(const std::vector<ResultPair>& pairs, const Relation& r,
                       const Relation& s);

inline constexpr std::size_t kHistogramBuckets = 10;  // lengths 1..9, then 10+

struct SequenceHistogram {
  std::array<std::uint64_t, kHistogramBuckets> runs{};
  std::uint64_t total_runs = 0;

  /// Percentage of runs in bucket i; 0 when there are no runs.
  double percent(std::size_t bucket) const;
};

/// Merges the two indexes as the sweep does (r first on ties) and counts
/// maximal runs of consecutive endpoints from the same relation.
SequenceHistogram sequence_histogram(const EndpointIndex& idx_r, const EndpointIndex& idx_s);

}  // namespace ijoin
