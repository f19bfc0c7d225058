#include "ijoin/iterators.hpp"

#include <gtest/gtest.h>

#include <thread>

#include "ijoin/stream_source.hpp"
#include "test_support.hpp"

namespace ijoin {
namespace {

constexpr auto S = EndpointKind::Start;
constexpr auto E = EndpointKind::End;

std::vector<Timestamp> times(const std::vector<Endpoint>& es) {
  std::vector<Timestamp> out;
  for (const auto& e : es) out.push_back(e.timestamp);
  return out;
}

TEST(FilteringIterator, SplitsExampleIndexByKind) {
  const auto idx = build_endpoint_index(testing::example_r());
  EXPECT_EQ(times(drain(filtering_iterator(IndexIterator(idx), S))),
            (std::vector<Timestamp>{0, 1, 2}));
  EXPECT_EQ(times(drain(filtering_iterator(IndexIterator(idx), E))),
            (std::vector<Timestamp>{1, 3, 5}));
}

TEST(FilteringIterator, NoMatchIsFinishedImmediately) {
  const std::vector<Endpoint> starts{{0, S, 0}, {2, S, 1}};
  auto it = filtering_iterator(IndexIterator(starts), E);
  EXPECT_TRUE(it.finished());
}

TEST(ShiftingIterator, ShiftsAndRelabels) {
  const auto idx = build_endpoint_index(testing::example_r());
  const auto shifted =
      drain(shifting_iterator(filtering_iterator(IndexIterator(idx), E), 2, S));
  EXPECT_EQ(times(shifted), (std::vector<Timestamp>{3, 5, 7}));
  for (const auto& e : shifted) EXPECT_EQ(e.kind, S);

  EXPECT_EQ(drain(shifting_iterator(IndexIterator(idx), 0, S)).size(), idx.size());
  const std::vector<Endpoint> open{{kInfinity, E, 0}};
  EXPECT_EQ(drain(shifting_iterator(IndexIterator(open), 5, E)).front().timestamp, kInfinity);
}

TEST(ShiftingIterator, ZeroShiftSameKindIsIdentity) {
  const std::vector<Endpoint> ends{{1, E, 0}, {3, E, 1}};
  EXPECT_EQ(drain(shifting_iterator(IndexIterator(ends), 0, E)), ends);
}

TEST(MergingIterator, RebuildsIndexFromKinds) {
  SplitMix64 rng(9);
  const auto rel = testing::random_relation(rng, 200, 0, 50);
  const auto idx = build_endpoint_index(rel);
  const auto merged = drain(merging_iterator(filtering_iterator(IndexIterator(idx), S),
                                             filtering_iterator(IndexIterator(idx), E)));
  ASSERT_EQ(merged.size(), idx.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    EXPECT_EQ(merged[i].timestamp, idx[i].timestamp);
    EXPECT_EQ(merged[i].kind, idx[i].kind);
    if (i > 0) EXPECT_FALSE(endpoint_less(merged[i], merged[i - 1]));
  }
}

TEST(MergingIterator, TiesGoToSecondSource) {
  const std::vector<Endpoint> a{{2, S, 1}};
  const std::vector<Endpoint> b{{2, S, 9}};
  const auto out = drain(merging_iterator(IndexIterator(a), IndexIterator(b)));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].tuple_id, 9u);
  EXPECT_EQ(out[1].tuple_id, 1u);
}

TEST(MergingIterator, EmptySideIsTransparent) {
  const std::vector<Endpoint> a{{1, S, 0}, {4, E, 0}};
  const std::vector<Endpoint> none;
  EXPECT_EQ(drain(merging_iterator(IndexIterator(a), IndexIterator(none))), a);
  EXPECT_EQ(drain(merging_iterator(IndexIterator(none), IndexIterator(a))), a);
}

TEST(FirstEndIterator, KeepsEarlierEnd) {
  const std::vector<Endpoint> in{{0, S, 0}, {3, E, 0}, {6, E, 0}};
  EXPECT_EQ(drain(first_end_iterator(IndexIterator(in))),
            (std::vector<Endpoint>{{0, S, 0}, {3, E, 0}}));
}

TEST(FirstEndIterator, CoincidingEndsEmitOnce) {
  const std::vector<Endpoint> in{{0, S, 0}, {4, E, 0}, {4, E, 0}};
  auto it = first_end_iterator(IndexIterator(in));
  EXPECT_EQ(drain(it), (std::vector<Endpoint>{{0, S, 0}, {4, E, 0}}));
}

TEST(FirstEndIterator, StartsPassThrough) {
  const std::vector<Endpoint> in{{0, S, 0}, {1, S, 1}, {2, S, 2}};
  EXPECT_EQ(drain(first_end_iterator(IndexIterator(in))), in);
}

TEST(FirstEndIterator, InterleavedTuples) {
  const std::vector<Endpoint> in{{0, S, 0}, {1, S, 1}, {2, E, 1}, {3, E, 0},
                                 {4, E, 1}, {9, E, 0}};
  auto it = first_end_iterator(IndexIterator(in));
  const auto out = drain(it);
  EXPECT_EQ(out, (std::vector<Endpoint>{{0, S, 0}, {1, S, 1}, {2, E, 1}, {3, E, 0}}));
}

TEST(SecondStartIterator, KeepsLaterStart) {
  const std::vector<Endpoint> in{{0, S, 0}, {2, S, 0}, {5, E, 0}};
  EXPECT_EQ(drain(second_start_iterator(IndexIterator(in))),
            (std::vector<Endpoint>{{2, S, 0}, {5, E, 0}}));
}

TEST(SecondStartIterator, CoincidingStartsEmitOnce) {
  const std::vector<Endpoint> in{{1, S, 0}, {1, S, 0}, {4, E, 0}};
  EXPECT_EQ(drain(second_start_iterator(IndexIterator(in))),
            (std::vector<Endpoint>{{1, S, 0}, {4, E, 0}}));
}

TEST(SecondStartIterator, EndsPassThrough) {
  const std::vector<Endpoint> in{{1, E, 0}, {2, E, 1}};
  EXPECT_EQ(drain(second_start_iterator(IndexIterator(in))), in);
}

// Clipping every tuple's end at Ts + d + 1 matches min(Te, Ts + d + 1).
TEST(FirstEndIterator, ClippedEndsMatchMinimum) {
  SplitMix64 rng(21);
  const auto rel = testing::random_relation(rng, 300, 0, 60);
  const auto idx = build_endpoint_index(rel);
  for (Timestamp d : {0, 1, 4, 30}) {
    const auto out = drain(first_end_iterator(merging_iterator(
        IndexIterator(idx),
        shifting_iterator(filtering_iterator(IndexIterator(idx), S), d + 1, E))));
    ASSERT_EQ(out.size(), idx.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i > 0) EXPECT_FALSE(endpoint_less(out[i], out[i - 1]));
      const auto& t = rel.at(out[i].tuple_id);
      if (out[i].kind == E) EXPECT_EQ(out[i].timestamp, std::min(t.te, t.ts + d + 1));
    }
  }
}

TEST(SecondStartIterator, ClippedStartsMatchMaximum) {
  SplitMix64 rng(22);
  const auto rel = testing::random_relation(rng, 300, 0, 60);
  const auto idx = build_endpoint_index(rel);
  for (Timestamp eps : {0, 1, 4, 30}) {
    auto it = second_start_iterator(merging_iterator(
        IndexIterator(idx),
        shifting_iterator(filtering_iterator(IndexIterator(idx), E), -eps - 1, S)));
    const auto out = drain(it);
    ASSERT_EQ(out.size(), idx.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i > 0) EXPECT_FALSE(endpoint_less(out[i], out[i - 1]));
      const auto& t = rel.at(out[i].tuple_id);
      if (out[i].kind == S) EXPECT_EQ(out[i].timestamp, std::max(t.ts, t.te - eps - 1));
    }
  }
}

TEST(StreamSource, MatchesIndexTraversal) {
  const auto idx = build_endpoint_index(testing::example_r());
  auto feed = std::make_shared<EndpointFeed>();
  for (const auto& e : idx) feed->push(e);
  feed->close();
  EXPECT_EQ(drain(stream_source_iterator(feed)), drain(IndexIterator(idx)));
}

TEST(StreamSource, ImmediateEndOfStream) {
  auto feed = std::make_shared<EndpointFeed>();
  feed->close();
  auto it = stream_source_iterator(feed);
  EXPECT_TRUE(it.finished());
  EXPECT_EQ(it.poll(), StreamSourceIterator::Status::Finished);
}

TEST(StreamSource, RejectsOutOfOrderPush) {
  EndpointFeed feed;
  feed.push({5, S, 0});
  EXPECT_THROW(feed.push({3, S, 1}), OrderingError);
  feed.close();
  EXPECT_THROW(feed.push({7, S, 2}), std::logic_error);
}

TEST(StreamSource, PollReportsPending) {
  auto feed = std::make_shared<EndpointFeed>();
  auto it = stream_source_iterator(feed);
  EXPECT_EQ(it.poll(), StreamSourceIterator::Status::Pending);
  feed->push({1, S, 0});
  EXPECT_EQ(it.poll(), StreamSourceIterator::Status::Ready);
  EXPECT_EQ(it.endpoint(), (Endpoint{1, S, 0}));
}

TEST(StreamSource, ProducerThreadFeedsFilteredPipeline) {
  SplitMix64 rng(31);
  const auto rel = testing::random_relation(rng, 400, 0, 100);
  const auto idx = build_endpoint_index(rel);
  auto feed = std::make_shared<EndpointFeed>();
  std::jthread producer([&] {
    for (const auto& e : idx) feed->push(e);
    feed->close();
  });
  const auto got = drain(filtering_iterator(stream_source_iterator(feed), S));
  EXPECT_EQ(got, drain(filtering_iterator(IndexIterator(idx), S)));
}

}  // namespace
}  // namespace ijoin
