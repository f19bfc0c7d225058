#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ijoin/chained_map.hpp"
#include "ijoin/core.hpp"
#include "ijoin/engine.hpp"
#include "ijoin/gapless_map.hpp"
#include "ijoin/iterators.hpp"
#include "ijoin/predicate.hpp"

namespace ijoin {

enum class EngineKind { Eager, Lazy };
enum class ActiveSetKind { Gapless, Chained };

/// Which building block the right-overlap and during families use: a
/// start-preceding sweep over swapped inputs, or an end-following sweep.
enum class Formulation { StartPreceding, EndFollowing };

struct JoinOptions {
  EngineKind engine = EngineKind::Lazy;
  std::size_t capacity = kDefaultLazyCapacity;
  ActiveSetKind active_set = ActiveSetKind::Gapless;
  Formulation formulation = Formulation::StartPreceding;
};

namespace detail {

inline void check_offset(const std::optional<Timestamp>& v, const char* what) {
  if (v && *v < 0) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

/// Counts pairs reaching the caller's consumer.
template <class Consumer>
struct CountingConsumer {
  Consumer& inner;
  std::uint64_t count = 0;
  void operator()(const IntervalTuple& r, const IntervalTuple& s, Timestamp at) {
    ++count;
    emit(inner, r, s, at);
  }
};

/// Applies a residual selection before forwarding. The predicate receives a
/// counter to bump once per attribute comparison it performs.
template <class Consumer, class Pred>
struct FilteringConsumer {
  Consumer& inner;
  Pred pred;
  std::uint64_t comparisons = 0;
  void operator()(const IntervalTuple& r, const IntervalTuple& s, Timestamp at) {
    if (pred(r, s, comparisons)) emit(inner, r, s, at);
  }
};

template <class Consumer, class Pred>
FilteringConsumer<Consumer, Pred> filtering(Consumer& c, Pred pred) {
  return {c, std::move(pred)};
}

/// Restores (r, s) order for joins run with swapped arguments.
template <class Consumer>
struct ReversingConsumer {
  Consumer& inner;
  void operator()(const IntervalTuple& a, const IntervalTuple& b, Timestamp at) {
    emit(inner, b, a, at);
  }
};

template <class Consumer>
ReversingConsumer<Consumer> reversing(Consumer& c) {
  return {c};
}

inline bool le_or_lt(Timestamp a, Timestamp b, bool strict) { return strict ? a < b : a <= b; }

template <EndpointCursor ItR, EndpointCursor ItS, class Consumer>
JoinStats sweep(const JoinOptions& o, const Relation& r, const Relation& s, ItR itR, ItS itS,
                ComparatorKind comp, Consumer& consumer) {
  const bool lazy = o.engine == EngineKind::Lazy;
  if (o.active_set == ActiveSetKind::Chained) {
    if (lazy) {
      return lazy_join_by_s<ChainedHashMap>(r, s, std::move(itR), std::move(itS), comp,
                                            consumer, o.capacity);
    }
    return join_by_s<ChainedHashMap>(r, s, std::move(itR), std::move(itS), comp, consumer);
  }
  if (lazy) {
    return lazy_join_by_s<GaplessHashMap<>>(r, s, std::move(itR), std::move(itS), comp,
                                            consumer, o.capacity);
  }
  return join_by_s<GaplessHashMap<>>(r, s, std::move(itR), std::move(itS), comp, consumer);
}

// The *_core functions take an (r, s, at) consumer by reference and leave
// output_count at the engine's raw consumer-call count.

template <class Consumer>
JoinStats start_preceding_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                               const EndpointIndex& idx_s, bool strict,
                               std::optional<Timestamp> delta, Consumer& c,
                               const JoinOptions& o) {
  const auto comp = strict ? ComparatorKind::Strict : ComparatorKind::NonStrict;
  auto it_s = filtering_iterator(IndexIterator(idx_s), EndpointKind::Start);
  if (!delta) return sweep(o, r, s, IndexIterator(idx_r), std::move(it_s), comp, c);
  // Te -> min(Te, Ts + delta + 1): a virtual End per tuple, first End wins.
  auto it_r = first_end_iterator(merging_iterator(
      IndexIterator(idx_r),
      shifting_iterator(filtering_iterator(IndexIterator(idx_r), EndpointKind::Start),
                        shift(*delta, 1), EndpointKind::End)));
  return sweep(o, r, s, std::move(it_r), std::move(it_s), comp, c);
}

template <class Consumer>
JoinStats end_following_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                             const EndpointIndex& idx_s, bool strict,
                             std::optional<Timestamp> epsilon, Consumer& c,
                             const JoinOptions& o) {
  const auto comp = strict ? ComparatorKind::NonStrict : ComparatorKind::Strict;
  auto it_s = filtering_iterator(IndexIterator(idx_s), EndpointKind::End);
  if (!epsilon) return sweep(o, r, s, IndexIterator(idx_r), std::move(it_s), comp, c);
  // Ts -> max(Ts, Te - epsilon - 1): a virtual Start per tuple, second Start wins.
  auto it_r = second_start_iterator(merging_iterator(
      IndexIterator(idx_r),
      shifting_iterator(filtering_iterator(IndexIterator(idx_r), EndpointKind::End),
                        shift(-*epsilon, -1), EndpointKind::Start)));
  return sweep(o, r, s, std::move(it_r), std::move(it_s), comp, c);
}

template <class Consumer>
JoinStats general_before_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                              const EndpointIndex& idx_s, Timestamp beta,
                              std::optional<Timestamp> delta, Consumer& c,
                              const JoinOptions& o) {
  if (beta != 0 && beta != 1) throw std::invalid_argument("beta must be 0 or 1");
  // [Te + beta, Te + delta + 1) is empty for every tuple.
  if (delta && beta > *delta) return {};
  const Timestamp end_offset = delta ? shift(*delta, 1) : kInfinity;
  auto it_r = merging_iterator(
      shifting_iterator(filtering_iterator(IndexIterator(idx_r), EndpointKind::End), beta,
                        EndpointKind::Start),
      shifting_iterator(filtering_iterator(IndexIterator(idx_r), EndpointKind::End),
                        end_offset, EndpointKind::End));
  auto it_s = filtering_iterator(IndexIterator(idx_s), EndpointKind::Start);
  return sweep(o, r, s, std::move(it_r), std::move(it_s), ComparatorKind::NonStrict, c);
}

/// r reduced to [Ts, Ts + 1) and swept against s starts: pairs share Ts.
template <class Consumer>
JoinStats same_start_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                          const EndpointIndex& idx_s, Consumer& c, const JoinOptions& o) {
  auto it_r = merging_iterator(
      filtering_iterator(IndexIterator(idx_r), EndpointKind::Start),
      shifting_iterator(filtering_iterator(IndexIterator(idx_r), EndpointKind::Start), 1,
                        EndpointKind::End));
  auto it_s = filtering_iterator(IndexIterator(idx_s), EndpointKind::Start);
  return sweep(o, r, s, std::move(it_r), std::move(it_s), ComparatorKind::NonStrict, c);
}

/// r reduced to [Te - 1, Te) and swept against s ends: pairs share Te.
template <class Consumer>
JoinStats same_end_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                        const EndpointIndex& idx_s, Consumer& c, const JoinOptions& o) {
  auto it_r = merging_iterator(
      shifting_iterator(filtering_iterator(IndexIterator(idx_r), EndpointKind::End), -1,
                        EndpointKind::Start),
      shifting_iterator(filtering_iterator(IndexIterator(idx_r), EndpointKind::End), 0,
                        EndpointKind::End));
  auto it_s = filtering_iterator(IndexIterator(idx_s), EndpointKind::End);
  return sweep(o, r, s, std::move(it_r), std::move(it_s), ComparatorKind::Strict, c);
}

template <class Consumer>
JoinStats left_overlap_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                            const EndpointIndex& idx_s, bool strict,
                            std::optional<Timestamp> delta, std::optional<Timestamp> epsilon,
                            Consumer& c, const JoinOptions& o) {
  auto f = filtering(c, [strict, epsilon](const IntervalTuple& rt, const IntervalTuple& st,
                                          std::uint64_t& n) {
    ++n;
    if (!le_or_lt(rt.te, st.te, strict)) return false;
    if (!epsilon) return true;
    ++n;
    return st.te <= shift(rt.te, *epsilon);
  });
  auto stats = start_preceding_core(r, s, idx_r, idx_s, strict, delta, f, o);
  stats.comparison_count += f.comparisons;
  return stats;
}

template <class Consumer>
JoinStats right_overlap_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                             const EndpointIndex& idx_s, bool strict,
                             std::optional<Timestamp> delta, std::optional<Timestamp> epsilon,
                             Consumer& c, const JoinOptions& o) {
  if (o.formulation == Formulation::StartPreceding) {
    auto rev = reversing(c);
    return left_overlap_core(s, r, idx_s, idx_r, strict, delta, epsilon, rev, o);
  }
  auto f = filtering(c, [strict, delta](const IntervalTuple& rt, const IntervalTuple& st,
                                        std::uint64_t& n) {
    ++n;
    if (!le_or_lt(st.ts, rt.ts, strict)) return false;
    if (!delta) return true;
    ++n;
    return shift(rt.ts, -*delta) <= st.ts;
  });
  auto stats = end_following_core(r, s, idx_r, idx_s, strict, epsilon, f, o);
  stats.comparison_count += f.comparisons;
  return stats;
}

/// r contains s: r.Ts <= s.Ts, s.Te <= r.Te.
template <class Consumer>
JoinStats reverse_during_core(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                              const EndpointIndex& idx_s, bool strict,
                              std::optional<Timestamp> delta, std::optional<Timestamp> epsilon,
                              Consumer& c, const JoinOptions& o) {
  if (o.formulation == Formulation::StartPreceding) {
    auto f = filtering(c, [strict, epsilon](const IntervalTuple& rt, const IntervalTuple& st,
                                            std::uint64_t& n) {
      ++n;
      if (!le_or_lt(st.te, rt.te, strict)) return false;
      if (!epsilon) return true;
      ++n;
      return shift(rt.te, -*epsilon) <= st.te;
    });
    auto stats = start_preceding_core(r, s, idx_r, idx_s, strict, delta, f, o);
    stats.comparison_count += f.comparisons;
    return stats;
  }
  auto f = filtering(c, [strict, delta](const IntervalTuple& rt, const IntervalTuple& st,
                                        std::uint64_t& n) {
    ++n;
    if (!le_or_lt(rt.ts, st.ts, strict)) return false;
    if (!delta) return true;
    ++n;
    return st.ts <= shift(rt.ts, *delta);
  });
  auto stats = end_following_core(r, s, idx_r, idx_s, strict, epsilon, f, o);
  stats.comparison_count += f.comparisons;
  return stats;
}

template <class Consumer, class Core>
JoinStats run_counted(Consumer&& consumer, Core&& core) {
  CountingConsumer<std::remove_reference_t<Consumer>> counting{consumer};
  JoinStats stats = core(counting);
  stats.output_count = counting.count;
  return stats;
}

}  // namespace detail

// Every join below reports pairs as consumer(r, s) or consumer(r, s, emitted_at)
// and returns the run's counters. idx_r / idx_s must be the endpoint indexes of
// r / s. Output order is unspecified.

/// r.Ts <= s.Ts < r.Te (strict: r.Ts < s.Ts), and s.Ts - r.Ts <= delta.
template <class Consumer>
JoinStats start_preceding(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                          const EndpointIndex& idx_s, bool strict,
                          std::optional<Timestamp> delta, Consumer&& consumer,
                          const JoinOptions& o = {}) {
  detail::check_offset(delta, "delta");
  return detail::run_counted(consumer, [&](auto& c) {
    return detail::start_preceding_core(r, s, idx_r, idx_s, strict, delta, c, o);
  });
}

/// r.Ts < s.Te <= r.Te (strict: s.Te < r.Te), and r.Te - s.Te <= epsilon.
template <class Consumer>
JoinStats end_following(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                        const EndpointIndex& idx_s, bool strict,
                        std::optional<Timestamp> epsilon, Consumer&& consumer,
                        const JoinOptions& o = {}) {
  detail::check_offset(epsilon, "epsilon");
  return detail::run_counted(consumer, [&](auto& c) {
    return detail::end_following_core(r, s, idx_r, idx_s, strict, epsilon, c, o);
  });
}

/// r.Te + beta <= s.Ts, and s.Ts - r.Te <= delta. beta = 0 gives the ISEQL
/// before, beta = 1 Allen's (strict) before.
template <class Consumer>
JoinStats general_before(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                         const EndpointIndex& idx_s, Timestamp beta,
                         std::optional<Timestamp> delta, Consumer&& consumer,
                         const JoinOptions& o = {}) {
  detail::check_offset(delta, "delta");
  return detail::run_counted(consumer, [&](auto& c) {
    return detail::general_before_core(r, s, idx_r, idx_s, beta, delta, c, o);
  });
}

/// r.Te = s.Ts.
template <class Consumer>
JoinStats meets(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                const EndpointIndex& idx_s, Consumer&& consumer, const JoinOptions& o = {}) {
  return general_before(r, s, idx_r, idx_s, 0, Timestamp{0}, consumer, o);
}

/// r.Ts <= s.Ts < r.Te <= s.Te with s.Ts - r.Ts <= delta, s.Te - r.Te <= epsilon.
template <class Consumer>
JoinStats left_overlap(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                       const EndpointIndex& idx_s, bool strict, std::optional<Timestamp> delta,
                       std::optional<Timestamp> epsilon, Consumer&& consumer,
                       const JoinOptions& o = {}) {
  detail::check_offset(delta, "delta");
  detail::check_offset(epsilon, "epsilon");
  return detail::run_counted(consumer, [&](auto& c) {
    return detail::left_overlap_core(r, s, idx_r, idx_s, strict, delta, epsilon, c, o);
  });
}

/// s left-overlaps r.
template <class Consumer>
JoinStats right_overlap(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                        const EndpointIndex& idx_s, bool strict, std::optional<Timestamp> delta,
                        std::optional<Timestamp> epsilon, Consumer&& consumer,
                        const JoinOptions& o = {}) {
  detail::check_offset(delta, "delta");
  detail::check_offset(epsilon, "epsilon");
  return detail::run_counted(consumer, [&](auto& c) {
    return detail::right_overlap_core(r, s, idx_r, idx_s, strict, delta, epsilon, c, o);
  });
}

/// s.Ts <= r.Ts and r.Te <= s.Te, with r.Ts - s.Ts <= delta, s.Te - r.Te <= epsilon.
/// Runs as a reverse-during join over swapped inputs.
template <class Consumer>
JoinStats during(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                 const EndpointIndex& idx_s, bool strict, std::optional<Timestamp> delta,
                 std::optional<Timestamp> epsilon, Consumer&& consumer,
                 const JoinOptions& o = {}) {
  detail::check_offset(delta, "delta");
  detail::check_offset(epsilon, "epsilon");
  return detail::run_counted(consumer, [&](auto& c) {
    auto rev = detail::reversing(c);
    return detail::reverse_during_core(s, r, idx_s, idx_r, strict, delta, epsilon, rev, o);
  });
}

/// r.Ts <= s.Ts and s.Te <= r.Te, with s.Ts - r.Ts <= delta, r.Te - s.Te <= epsilon.
template <class Consumer>
JoinStats reverse_during(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                         const EndpointIndex& idx_s, bool strict,
                         std::optional<Timestamp> delta, std::optional<Timestamp> epsilon,
                         Consumer&& consumer, const JoinOptions& o = {}) {
  detail::check_offset(delta, "delta");
  detail::check_offset(epsilon, "epsilon");
  return detail::run_counted(consumer, [&](auto& c) {
    return detail::reverse_during_core(r, s, idx_r, idx_s, strict, delta, epsilon, c, o);
  });
}

template <class Consumer>
JoinStats equals_join(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                      const EndpointIndex& idx_s, Consumer&& consumer,
                      const JoinOptions& o = {}) {
  return detail::run_counted(consumer, [&](auto& c) {
    auto f = detail::filtering(
        c, [](const IntervalTuple& rt, const IntervalTuple& st, std::uint64_t& n) {
          ++n;
          return rt.te == st.te;
        });
    auto stats = detail::same_start_core(r, s, idx_r, idx_s, f, o);
    stats.comparison_count += f.comparisons;
    return stats;
  });
}

template <class Consumer>
JoinStats starts_join(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                      const EndpointIndex& idx_s, Consumer&& consumer,
                      const JoinOptions& o = {}) {
  return detail::run_counted(consumer, [&](auto& c) {
    auto f = detail::filtering(
        c, [](const IntervalTuple& rt, const IntervalTuple& st, std::uint64_t& n) {
          ++n;
          return rt.te < st.te;
        });
    auto stats = detail::same_start_core(r, s, idx_r, idx_s, f, o);
    stats.comparison_count += f.comparisons;
    return stats;
  });
}

template <class Consumer>
JoinStats finishes_join(const Relation& r, const Relation& s, const EndpointIndex& idx_r,
                        const EndpointIndex& idx_s, Consumer&& consumer,
                        const JoinOptions& o = {}) {
  return detail::run_counted(consumer, [&](auto& c) {
    auto f = detail::filtering(
        c, [](const IntervalTuple& rt, const IntervalTuple& st, std::uint64_t& n) {
          ++n;
          return st.ts < rt.ts;
        });
    auto stats = detail::same_end_core(r, s, idx_r, idx_s, f, o);
    stats.comparison_count += f.comparisons;
    return stats;
  });
}

/// Dispatches a PredicateSpec to its join operator. Inverse relations run the
/// base operator on swapped inputs; pairs still arrive as (r, s).
template <class Sink>
JoinStats run_join_into(const PredicateSpec& spec, const Relation& r, const Relation& s,
                   const EndpointIndex& idx_r, const EndpointIndex& idx_s, Sink&& sink,
                   const JoinOptions& o = {}) {
  validate(spec);
  const bool strict = spec.strict;
  const auto delta = spec.delta;
  const auto eps = spec.epsilon;
  auto rev = detail::reversing(sink);
  switch (spec.predicate) {
    case Predicate::StartPreceding:
      return start_preceding(r, s, idx_r, idx_s, strict, delta, sink, o);
    case Predicate::InverseStartPreceding:
      return start_preceding(s, r, idx_s, idx_r, strict, delta, rev, o);
    case Predicate::EndFollowing:
      return end_following(r, s, idx_r, idx_s, strict, eps, sink, o);
    case Predicate::InverseEndFollowing:
      return end_following(s, r, idx_s, idx_r, strict, eps, rev, o);
    case Predicate::Before:
      return general_before(r, s, idx_r, idx_s, strict ? 1 : 0, delta, sink, o);
    case Predicate::InverseBefore:
      return general_before(s, r, idx_s, idx_r, strict ? 1 : 0, delta, rev, o);
    case Predicate::LeftOverlap:
      return left_overlap(r, s, idx_r, idx_s, strict, delta, eps, sink, o);
    case Predicate::RightOverlap:
      return right_overlap(r, s, idx_r, idx_s, strict, delta, eps, sink, o);
    case Predicate::During:
      return during(r, s, idx_r, idx_s, strict, delta, eps, sink, o);
    case Predicate::ReverseDuring:
      return reverse_during(r, s, idx_r, idx_s, strict, delta, eps, sink, o);
    case Predicate::AllenBefore:
      return general_before(r, s, idx_r, idx_s, 1, std::nullopt, sink, o);
    case Predicate::AllenAfter:
      return general_before(s, r, idx_s, idx_r, 1, std::nullopt, rev, o);
    case Predicate::Meets:
      return meets(r, s, idx_r, idx_s, sink, o);
    case Predicate::MetBy:
      return meets(s, r, idx_s, idx_r, rev, o);
    case Predicate::AllenOverlaps:
      return left_overlap(r, s, idx_r, idx_s, true, std::nullopt, std::nullopt, sink, o);
    case Predicate::AllenInverseOverlaps:
      return right_overlap(r, s, idx_r, idx_s, true, std::nullopt, std::nullopt, sink, o);
    case Predicate::AllenDuring:
      return during(r, s, idx_r, idx_s, true, std::nullopt, std::nullopt, sink, o);
    case Predicate::AllenInverseDuring:
      return reverse_during(r, s, idx_r, idx_s, true, std::nullopt, std::nullopt, sink, o);
    case Predicate::Starts:
      return starts_join(r, s, idx_r, idx_s, sink, o);
    case Predicate::StartedBy:
      return starts_join(s, r, idx_s, idx_r, rev, o);
    case Predicate::Finishes:
      return finishes_join(r, s, idx_r, idx_s, sink, o);
    case Predicate::FinishedBy:
      return finishes_join(s, r, idx_s, idx_r, rev, o);
    case Predicate::Equals:
      return equals_join(r, s, idx_r, idx_s, sink, o);
  }
  throw std::invalid_argument("unknown predicate");
}

struct JoinResult {
  std::vector<ResultPair> pairs;
  JoinStats stats;
};

/// Validates both relations, builds their indexes and collects every pair.
JoinResult run_join(const PredicateSpec& spec, const Relation& r, const Relation& s,
                    const JoinOptions& o = {});

/// Same, reusing prebuilt indexes.
JoinResult run_join(const PredicateSpec& spec, const Relation& r, const Relation& s,
                    const EndpointIndex& idx_r, const EndpointIndex& idx_s,
                    const JoinOptions& o = {});

struct PartitionedResult {
  std::vector<ResultPair> pairs;
  std::vector<JoinStats> partition_stats;
};

/// Splits r round-robin (by ascending Ts) into k partitions and joins each
/// against all of s, concurrently when `parallel` is set. Pair ids refer to
/// the original relations.
PartitionedResult partitioned_join(const PredicateSpec& spec, const Relation& r,
                                   const Relation& s, std::size_t k, const JoinOptions& o = {},
                                   bool parallel = true);

/// Sorted (r_id, s_id) set; throws std::logic_error on a duplicate pair.
PairSet to_pair_set(const std::vector<ResultPair>& pairs);

}  // namespace ijoin
