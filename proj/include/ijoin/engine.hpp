#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ijoin/core.hpp"
#include "ijoin/gapless_map.hpp"
#include "ijoin/iterators.hpp"

namespace ijoin {

struct JoinStats {
  std::uint64_t getnext_count = 0;         // active-set element fetches
  std::uint64_t comparison_count = 0;      // attribute comparisons in filtering consumers
  std::uint64_t output_count = 0;          // emitted pairs
  std::uint64_t buffer_flushes = 0;        // lazy buffer drains
  std::uint64_t endpoint_comparisons = 0;  // comparator invocations

  JoinStats& operator+=(const JoinStats& o) noexcept {
    getnext_count += o.getnext_count;
    comparison_count += o.comparison_count;
    output_count += o.output_count;
    buffer_flushes += o.buffer_flushes;
    endpoint_comparisons += o.endpoint_comparisons;
    return *this;
  }
  friend bool operator==(const JoinStats&, const JoinStats&) = default;
};

struct ResultPair {
  TupleId r_id = 0;
  TupleId s_id = 0;
  Timestamp emitted_at = 0;  // timestamp of the s endpoint that triggered the pair
};

/// Default LazyJoinByS buffer size, in s tuples.
inline constexpr std::size_t kDefaultLazyCapacity = 2048;

/// Anything usable as the active tuple set.
template <class M>
concept ActiveTupleSet = requires(M& m, const M& cm, TupleId id, const IntervalTuple& t) {
  m.insert(id, t);
  { m.remove(id) } -> std::convertible_to<bool>;
  { cm.size() } -> std::convertible_to<std::size_t>;
  cm.scan([](const IntervalTuple&) {});
};

namespace detail {

/// Consumers take (r, s) or (r, s, emitted_at).
template <class Consumer>
inline void emit(Consumer& consumer, const IntervalTuple& r, const IntervalTuple& s,
                 Timestamp at) {
  if constexpr (std::invocable<Consumer&, const IntervalTuple&, const IntervalTuple&,
                               Timestamp>) {
    consumer(r, s, at);
  } else {
    consumer(r, s);
  }
}

template <bool Strict>
struct EndpointComp {
  bool operator()(const Endpoint& a, const Endpoint& b) const noexcept {
    if constexpr (Strict) {
      return compare_endpoints(a, b) < 0;
    } else {
      return compare_endpoints(a, b) <= 0;
    }
  }
};

template <class ActiveSet>
inline void apply_r_endpoint(ActiveSet& active, const Relation& r, const Endpoint& e) {
  if (e.kind == EndpointKind::Start) {
    active.insert(e.tuple_id, r.at(e.tuple_id));
  } else {
    active.remove(e.tuple_id);
  }
}

template <class Comp, class ActiveSet, class ItR, class ItS, class Consumer>
JoinStats join_by_s_impl(const Relation& r, const Relation& s, ItR& itR, ItS& itS,
                         Consumer& consumer, ActiveSet& active) {
  const Comp comp;
  JoinStats stats;
  while (!itR.finished() && !itS.finished()) {
    const Endpoint er = itR.endpoint();
    const Endpoint es = itS.endpoint();
    ++stats.endpoint_comparisons;
    if (comp(er, es)) {
      apply_r_endpoint(active, r, er);
      itR.advance();
    } else {
      const IntervalTuple& st = s.at(es.tuple_id);
      stats.getnext_count += active.size();
      stats.output_count += active.size();
      active.scan([&](const IntervalTuple& rt) { emit(consumer, rt, st, es.timestamp); });
      itS.advance();
    }
  }
  return stats;
}

template <class Comp, class ActiveSet, class ItR, class ItS, class Consumer>
JoinStats lazy_join_by_s_impl(const Relation& r, const Relation& s, ItR& itR, ItS& itS,
                              Consumer& consumer, ActiveSet& active, std::size_t capacity) {
  const Comp comp;
  JoinStats stats;
  std::vector<IntervalTuple> buffer;
  std::vector<Timestamp> buffer_at;
  buffer.reserve(capacity);
  buffer_at.reserve(capacity);

  while (!itR.finished() && !itS.finished()) {
    const Endpoint er = itR.endpoint();
    Endpoint es = itS.endpoint();
    ++stats.endpoint_comparisons;
    if (comp(er, es)) {
      apply_r_endpoint(active, r, er);
      itR.advance();
      continue;
    }
    // Collect the run of s endpoints not interrupted by an r endpoint.
    for (;;) {
      buffer.push_back(s.at(es.tuple_id));
      buffer_at.push_back(es.timestamp);
      itS.advance();
      if (itS.finished() || buffer.size() >= capacity) break;
      es = itS.endpoint();
      ++stats.endpoint_comparisons;
      if (comp(er, es)) break;
    }
    ++stats.buffer_flushes;
    stats.getnext_count += active.size();
    stats.output_count += active.size() * buffer.size();
    active.scan([&](const IntervalTuple& rt) {
      for (std::size_t i = 0; i < buffer.size(); ++i) {
        emit(consumer, rt, buffer[i], buffer_at[i]);
      }
    });
    buffer.clear();
    buffer_at.clear();
  }
  return stats;
}

}  // namespace detail

/// Core sweep. Interleaves the two endpoint streams; `comp` decides whether
/// the r endpoint goes first. r endpoints maintain the active set (Start
/// inserts, End removes and tolerates missing ids); every s endpoint pairs
/// its tuple with the whole active set. Stops when either stream runs dry.
///
/// Throws std::out_of_range when an iterator yields an id outside its
/// relation, and std::logic_error on a duplicate Start for one r tuple.
template <ActiveTupleSet ActiveSet = GaplessHashMap<>, EndpointCursor ItR,
          EndpointCursor ItS, class Consumer>
JoinStats join_by_s(const Relation& r, const Relation& s, ItR itR, ItS itS,
                    ComparatorKind comp, Consumer&& consumer, ActiveSet active = ActiveSet{}) {
  if (comp == ComparatorKind::Strict) {
    return detail::join_by_s_impl<detail::EndpointComp<true>>(r, s, itR, itS, consumer, active);
  }
  return detail::join_by_s_impl<detail::EndpointComp<false>>(r, s, itR, itS, consumer, active);
}

/// Cache-conscious variant of join_by_s: consecutive s endpoints (up to
/// `capacity`) are buffered and joined against a single scan of the active
/// set, r-outer and buffer-inner. Same pair set as join_by_s, in a
/// different order.
template <ActiveTupleSet ActiveSet = GaplessHashMap<>, EndpointCursor ItR,
          EndpointCursor ItS, class Consumer>
JoinStats lazy_join_by_s(const Relation& r, const Relation& s, ItR itR, ItS itS,
                         ComparatorKind comp, Consumer&& consumer,
                         std::size_t capacity = kDefaultLazyCapacity,
                         ActiveSet active = ActiveSet{}) {
  if (capacity == 0) throw std::invalid_argument("lazy buffer capacity must be >= 1");
  if (comp == ComparatorKind::Strict) {
    return detail::lazy_join_by_s_impl<detail::EndpointComp<true>>(r, s, itR, itS, consumer,
                                                                  active, capacity);
  }
  return detail::lazy_join_by_s_impl<detail::EndpointComp<false>>(r, s, itR, itS, consumer,
                                                                 active, capacity);
}

/// getnext reduction factor of a lazy run relative to an eager run over the
/// same input. Throws std::logic_error if the runs disagree on output size.
double compute_gnorf(const JoinStats& eager, const JoinStats& lazy);

}  // namespace ijoin
