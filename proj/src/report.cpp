#include "ijoin/report.hpp"

#include <algorithm>

namespace ijoin {

std::uint64_t checksum(const std::vector<ResultPair>& pairs, const Relation& r,
                       const Relation& s) {
  std::uint64_t sum = 0;
  for (const auto& p : pairs) {
    sum += static_cast<std::uint64_t>(r.at(p.r_id).ts);
    sum += static_cast<std::uint64_t>(s.at(p.s_id).ts);
  }
  return sum;
}

double SequenceHistogram::percent(std::size_t bucket) const {
  if (total_runs == 0) return 0.0;
  return 100.0 * static_cast<double>(runs.at(bucket)) / static_cast<double>(total_runs);
}

SequenceHistogram sequence_histogram(const EndpointIndex& idx_r, const EndpointIndex& idx_s) {
  SequenceHistogram h;
  auto close_run = [&](std::uint64_t len) {
    if (len == 0) return;
    ++h.runs[std::min<std::uint64_t>(len, kHistogramBuckets) - 1];
    ++h.total_runs;
  };
  std::size_t i = 0;
  std::size_t j = 0;
  int current = -1;  // 0 = r, 1 = s
  std::uint64_t len = 0;
  while (i < idx_r.size() || j < idx_s.size()) {
    const bool take_r =
        j == idx_s.size() || (i < idx_r.size() && compare_endpoints(idx_r[i], idx_s[j]) <= 0);
    const int source = take_r ? 0 : 1;
    take_r ? ++i : ++j;
    if (source != current) {
      close_run(len);
      current = source;
      len = 0;
    }
    ++len;
  }
  close_run(len);
  return h;
}

}  // namespace ijoin
