#include "ijoin/engine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "ijoin/chained_map.hpp"
#include "ijoin/dataset.hpp"
#include "test_support.hpp"

namespace ijoin {
namespace {

constexpr auto S = EndpointKind::Start;
constexpr auto E = EndpointKind::End;

struct Collector {
  std::vector<ResultPair>* out;
  void operator()(const IntervalTuple& r, const IntervalTuple& s, Timestamp at) const {
    out->push_back({r.id, s.id, at});
  }
};

PairSet sorted_pairs(const std::vector<ResultPair>& v) {
  PairSet out;
  for (const auto& p : v) out.emplace_back(p.r_id, p.s_id);
  std::sort(out.begin(), out.end());
  return out;
}

template <class Pred>
PairSet brute(const Relation& r, const Relation& s, Pred pred) {
  PairSet out;
  for (const auto& a : r.tuples) {
    for (const auto& b : s.tuples) {
      if (pred(a, b)) out.emplace_back(a.id, b.id);
    }
  }
  return out;
}

TEST(JoinByS, ExampleStartPreceding) {
  const auto r = testing::example_r();
  const auto s = testing::example_s();
  const auto ir = build_endpoint_index(r);
  const auto is = build_endpoint_index(s);
  std::vector<ResultPair> out;
  const auto stats = join_by_s(r, s, IndexIterator(ir), filtering_iterator(IndexIterator(is), S),
                               ComparatorKind::NonStrict, Collector{&out});
  EXPECT_EQ(sorted_pairs(out), (PairSet{{1, 0}, {2, 1}}));
  EXPECT_EQ(stats.output_count, 2u);
}

TEST(JoinByS, SinglePairEmittedAtStart) {
  Relation r;
  r.add(0, 10);
  Relation s;
  s.add(5, 6);
  const auto ir = build_endpoint_index(r);
  const auto is = build_endpoint_index(s);
  std::vector<ResultPair> out;
  join_by_s(r, s, IndexIterator(ir), filtering_iterator(IndexIterator(is), S),
            ComparatorKind::NonStrict, Collector{&out});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].r_id, 0u);
  EXPECT_EQ(out[0].s_id, 0u);
  EXPECT_EQ(out[0].emitted_at, 5);
}

TEST(JoinByS, EmptySStream) {
  const auto r = testing::example_r();
  const auto ir = build_endpoint_index(r);
  const std::vector<Endpoint> none;
  std::vector<ResultPair> out;
  const auto stats = join_by_s(r, r, IndexIterator(ir), IndexIterator(none),
                               ComparatorKind::NonStrict, Collector{&out});
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(stats.getnext_count, 0u);
  EXPECT_EQ(stats.output_count, 0u);
  EXPECT_EQ(stats.buffer_flushes, 0u);
}

TEST(JoinByS, TwoArgumentConsumer) {
  const auto r = testing::example_r();
  const auto ir = build_endpoint_index(r);
  int calls = 0;
  join_by_s(r, r, IndexIterator(ir), filtering_iterator(IndexIterator(ir), S),
            ComparatorKind::NonStrict, [&](const IntervalTuple&, const IntervalTuple&) { ++calls; });
  EXPECT_EQ(calls, 4);  // three self-pairs plus (r2, r3)
}

TEST(JoinByS, BadTupleIdFaults) {
  const auto r = testing::example_r();
  const std::vector<Endpoint> bogus{{0, S, 17}};
  const auto is = build_endpoint_index(r);
  EXPECT_THROW(join_by_s(r, r, IndexIterator(bogus), IndexIterator(is),
                         ComparatorKind::NonStrict, [](const IntervalTuple&, const IntervalTuple&) {}),
               std::out_of_range);
}

TEST(JoinByS, DuplicateStartViolatesContract) {
  const auto r = testing::example_r();
  const std::vector<Endpoint> twice{{0, S, 0}, {0, S, 0}};
  const std::vector<Endpoint> late{{9, S, 1}};
  EXPECT_THROW(join_by_s(r, r, IndexIterator(twice), IndexIterator(late),
                         ComparatorKind::NonStrict, [](const IntervalTuple&, const IntervalTuple&) {}),
               std::logic_error);
}

// Every configuration of (S kind, comparator) yields one of four predicates.
TEST(JoinByS, SweepConfigurationsMatchPredicates) {
  using Check = bool (*)(const IntervalTuple&, const IntervalTuple&);
  const std::vector<std::tuple<EndpointKind, ComparatorKind, Check>> configs{
      {S, ComparatorKind::NonStrict,
       [](const IntervalTuple& r, const IntervalTuple& s) { return r.ts <= s.ts && s.ts < r.te; }},
      {S, ComparatorKind::Strict,
       [](const IntervalTuple& r, const IntervalTuple& s) { return r.ts < s.ts && s.ts < r.te; }},
      {E, ComparatorKind::Strict,
       [](const IntervalTuple& r, const IntervalTuple& s) { return r.ts < s.te && s.te <= r.te; }},
      {E, ComparatorKind::NonStrict,
       [](const IntervalTuple& r, const IntervalTuple& s) { return r.ts < s.te && s.te < r.te; }},
  };
  SplitMix64 rng(101);
  for (int round = 0; round < 40; ++round) {
    const auto r = testing::random_relation(rng, rng.next_in(0, 60), 0, 40);
    const auto s = testing::random_relation(rng, rng.next_in(0, 60), 0, 40);
    const auto ir = build_endpoint_index(r);
    const auto is = build_endpoint_index(s);
    for (const auto& [kind, comp, check] : configs) {
      std::vector<ResultPair> eager, lazy;
      const auto se = join_by_s(r, s, IndexIterator(ir), filtering_iterator(IndexIterator(is), kind),
                                comp, Collector{&eager});
      const auto sl = lazy_join_by_s(r, s, IndexIterator(ir),
                                     filtering_iterator(IndexIterator(is), kind), comp,
                                     Collector{&lazy}, 3);
      const auto expected = brute(r, s, check);
      ASSERT_EQ(sorted_pairs(eager), expected);
      ASSERT_EQ(sorted_pairs(lazy), expected);
      EXPECT_LE(sl.getnext_count, se.getnext_count);
      EXPECT_LE(sl.output_count, sl.getnext_count * 3);
      for (const auto& p : eager) {
        const auto& st = s.at(p.s_id);
        EXPECT_EQ(p.emitted_at, kind == S ? st.ts : st.te);
      }
    }
  }
}

TEST(LazyJoinByS, BatchCountingExample) {
  const auto batch = gen_batch(10, 4);
  const auto ir = build_endpoint_index(batch.r);
  const auto is = build_endpoint_index(batch.s);
  auto run = [&](bool lazy) {
    std::vector<ResultPair> out;
    auto it_s = filtering_iterator(IndexIterator(is), S);
    const auto stats =
        lazy ? lazy_join_by_s(batch.r, batch.s, IndexIterator(ir), it_s,
                              ComparatorKind::NonStrict, Collector{&out}, 32)
             : join_by_s(batch.r, batch.s, IndexIterator(ir), it_s, ComparatorKind::NonStrict,
                         Collector{&out});
    EXPECT_EQ(out.size(), 40u);
    return stats;
  };
  const auto eager = run(false);
  const auto lazy = run(true);
  EXPECT_EQ(eager.getnext_count, 40u);
  EXPECT_EQ(lazy.getnext_count, 4u);
  EXPECT_EQ(lazy.buffer_flushes, 1u);
  EXPECT_DOUBLE_EQ(compute_gnorf(eager, lazy), 10.0);
}

TEST(LazyJoinByS, BufferFlushesAtCapacity) {
  const auto batch = gen_batch(5, 3);
  const auto ir = build_endpoint_index(batch.r);
  const auto is = build_endpoint_index(batch.s);
  std::vector<ResultPair> out;
  const auto stats = lazy_join_by_s(batch.r, batch.s, IndexIterator(ir),
                                    filtering_iterator(IndexIterator(is), S),
                                    ComparatorKind::NonStrict, Collector{&out}, 2);
  EXPECT_EQ(stats.buffer_flushes, 3u);
  EXPECT_EQ(stats.getnext_count, 9u);
  EXPECT_EQ(out.size(), 15u);
}

TEST(LazyJoinByS, BufferedPairsKeepTheirTimestamps) {
  Relation r;
  r.add(0, 100);
  Relation s;
  for (Timestamp t : {3, 4, 4, 9}) s.add(t, t + 1);
  const auto ir = build_endpoint_index(r);
  const auto is = build_endpoint_index(s);
  std::vector<ResultPair> out;
  lazy_join_by_s(r, s, IndexIterator(ir), filtering_iterator(IndexIterator(is), S),
                 ComparatorKind::NonStrict, Collector{&out});
  ASSERT_EQ(out.size(), 4u);
  for (const auto& p : out) EXPECT_EQ(p.emitted_at, s.at(p.s_id).ts);
}

TEST(LazyJoinByS, ZeroCapacityRejected) {
  const auto r = testing::example_r();
  const auto ir = build_endpoint_index(r);
  EXPECT_THROW(lazy_join_by_s(r, r, IndexIterator(ir), IndexIterator(ir),
                              ComparatorKind::NonStrict,
                              [](const IntervalTuple&, const IntervalTuple&) {}, 0),
               std::invalid_argument);
}

TEST(Gnorf, Definition) {
  JoinStats eager;
  eager.getnext_count = 40;
  eager.output_count = 40;
  JoinStats lazy = eager;
  lazy.getnext_count = 4;
  EXPECT_DOUBLE_EQ(compute_gnorf(eager, lazy), 10.0);
  JoinStats one;
  one.getnext_count = 1;
  one.output_count = 1;
  EXPECT_DOUBLE_EQ(compute_gnorf(one, one), 1.0);
  EXPECT_DOUBLE_EQ(compute_gnorf(JoinStats{}, JoinStats{}), 1.0);
  lazy.output_count = 39;
  EXPECT_THROW(compute_gnorf(eager, lazy), std::logic_error);
}

// Wraps the gapless map and checks, at every r endpoint, that the id's
// presence matches the tuple's lifecycle.
class AuditedSet {
 public:
  explicit AuditedSet(std::vector<int>* violations = nullptr) : violations_(violations) {}
  void insert(TupleId id, const IntervalTuple& t) {
    if (map_.contains(id)) violate();
    map_.insert(id, t);
    if (!map_.contains(id)) violate();
  }
  bool remove(TupleId id) {
    const bool removed = map_.remove(id);
    if (map_.contains(id)) violate();
    if (!map_.audit().empty()) violate();
    return removed;
  }
  std::size_t size() const { return map_.size(); }
  template <class V>
  void scan(V&& v) const {
    map_.scan(v);
  }

 private:
  void violate() {
    if (violations_) violations_->push_back(1);
  }
  GaplessHashMap<> map_;
  std::vector<int>* violations_;
};

TEST(ActiveSet, LifecycleAudit) {
  SplitMix64 rng(55);
  const auto r = testing::random_relation(rng, 300, 0, 100);
  const auto s = testing::random_relation(rng, 300, 0, 100);
  const auto ir = build_endpoint_index(r);
  const auto is = build_endpoint_index(s);
  std::vector<int> violations;
  join_by_s(r, s, IndexIterator(ir), filtering_iterator(IndexIterator(is), S),
            ComparatorKind::NonStrict,
            [&](const IntervalTuple& rt, const IntervalTuple& st) {
              // The pair exists only while r is active.
              if (!(rt.ts <= st.ts && st.ts < rt.te)) violations.push_back(2);
            },
            AuditedSet(&violations));
  EXPECT_TRUE(violations.empty());
}

TEST(ActiveSet, ChainedBaselineAgrees) {
  SplitMix64 rng(56);
  const auto r = testing::random_relation(rng, 200, 0, 80);
  const auto s = testing::random_relation(rng, 200, 0, 80);
  const auto ir = build_endpoint_index(r);
  const auto is = build_endpoint_index(s);
  std::vector<ResultPair> a, b;
  join_by_s<GaplessHashMap<>>(r, s, IndexIterator(ir), filtering_iterator(IndexIterator(is), S),
                              ComparatorKind::NonStrict, Collector{&a});
  join_by_s<ChainedHashMap>(r, s, IndexIterator(ir), filtering_iterator(IndexIterator(is), S),
                            ComparatorKind::NonStrict, Collector{&b});
  EXPECT_EQ(sorted_pairs(a), sorted_pairs(b));
}

}  // namespace
}  // namespace ijoin
