#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ijoin/joins.hpp"

namespace ijoin {

JoinResult run_join(const PredicateSpec& spec, const Relation& r, const Relation& s,
                    const EndpointIndex& idx_r, const EndpointIndex& idx_s,
                    const JoinOptions& o) {
  JoinResult out;
  out.stats = run_join_into(
      spec, r, s, idx_r, idx_s,
      [&](const IntervalTuple& rt, const IntervalTuple& st, Timestamp at) {
        out.pairs.push_back({rt.id, st.id, at});
      },
      o);
  return out;
}

JoinResult run_join(const PredicateSpec& spec, const Relation& r, const Relation& s,
                    const JoinOptions& o) {
  validate(spec);
  require_valid(r);
  require_valid(s);
  return run_join(spec, r, s, build_endpoint_index(r), build_endpoint_index(s), o);
}

PartitionedResult partitioned_join(const PredicateSpec& spec, const Relation& r,
                                   const Relation& s, std::size_t k, const JoinOptions& o,
                                   bool parallel) {
  if (k == 0) throw std::invalid_argument("partition count must be >= 1");
  validate(spec);
  require_valid(r);
  require_valid(s);

  std::vector<TupleId> order(r.size());
  std::iota(order.begin(), order.end(), TupleId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](TupleId a, TupleId b) { return r.tuples[a].ts < r.tuples[b].ts; });

  std::vector<Relation> parts(k);
  std::vector<std::vector<TupleId>> original(k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& t = r.tuples[order[i]];
    parts[i % k].add(t.ts, t.te, t.payload);
    original[i % k].push_back(t.id);
  }

  const EndpointIndex idx_s = build_endpoint_index(s);
  std::vector<JoinResult> results(k);
  auto work = [&](std::size_t p) {
    results[p] = run_join(spec, parts[p], s, build_endpoint_index(parts[p]), idx_s, o);
  };
  if (parallel && k > 1) {
    std::vector<std::jthread> threads;
    threads.reserve(k);
    for (std::size_t p = 0; p < k; ++p) threads.emplace_back(work, p);
  } else {
    for (std::size_t p = 0; p < k; ++p) work(p);
  }

  PartitionedResult out;
  for (std::size_t p = 0; p < k; ++p) {
    for (auto pair : results[p].pairs) {
      pair.r_id = original[p][pair.r_id];
      out.pairs.push_back(pair);
    }
    out.partition_stats.push_back(results[p].stats);
  }
  return out;
}

PairSet to_pair_set(const std::vector<ResultPair>& pairs) {
  PairSet out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.emplace_back(p.r_id, p.s_id);
  std::sort(out.begin(), out.end());
  if (auto it = std::adjacent_find(out.begin(), out.end()); it != out.end()) {
    throw std::logic_error("duplicate pair (" + std::to_string(it->first) + ", " +
                           std::to_string(it->second) + ")");
  }
  return out;
}

}  // namespace ijoin
