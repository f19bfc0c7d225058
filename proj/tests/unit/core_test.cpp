#include "ijoin/core.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ijoin {
namespace {

TEST(Shift, SaturatesAndKeepsInfinity) {
  EXPECT_EQ(shift(3, 4), 7);
  EXPECT_EQ(shift(3, -4), -1);
  EXPECT_EQ(shift(kInfinity, 5), kInfinity);
  EXPECT_EQ(shift(kInfinity, -5), kInfinity);
  EXPECT_EQ(shift(5, kInfinity), kInfinity);
  EXPECT_EQ(shift(kInfinity - 1, 10), kInfinity);
  EXPECT_EQ(shift(kMinTimestamp + 1, -10), kMinTimestamp);
}

TEST(EndpointOrder, EndBeforeStartAtEqualTimestamps) {
  const Endpoint end{4, EndpointKind::End, 9};
  const Endpoint start{4, EndpointKind::Start, 0};
  EXPECT_TRUE(endpoint_less(end, start));
  EXPECT_FALSE(endpoint_less(start, end));
  EXPECT_TRUE(endpoint_less({3, EndpointKind::Start, 0}, end));
  // Tuple ids do not take part in the order.
  EXPECT_TRUE(compare_endpoints({4, EndpointKind::End, 1}, {4, EndpointKind::End, 2}) == 0);
}

TEST(EndpointOrder, Comparators) {
  const Endpoint a{1, EndpointKind::Start, 0};
  const Endpoint b{1, EndpointKind::Start, 7};
  EXPECT_TRUE(compare(ComparatorKind::NonStrict, a, b));
  EXPECT_FALSE(compare(ComparatorKind::Strict, a, b));
  EXPECT_TRUE(compare(ComparatorKind::Strict, {0, EndpointKind::Start, 0}, b));
}

TEST(EndpointIndex, ExampleRelationListing) {
  const auto idx = build_endpoint_index(testing::example_r());
  const std::vector<Endpoint> expected{
      {0, EndpointKind::Start, 0}, {1, EndpointKind::End, 0}, {1, EndpointKind::Start, 1},
      {2, EndpointKind::Start, 2}, {3, EndpointKind::End, 1}, {5, EndpointKind::End, 2},
  };
  ASSERT_EQ(idx.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(idx[i], expected[i]) << i;
  EXPECT_EQ(to_string(idx[1]), "<1,end,0>");
}

TEST(EndpointIndex, EmptyRelation) { EXPECT_TRUE(build_endpoint_index(Relation{}).empty()); }

TEST(EndpointIndex, SortedWithTwoEventsPerTuple) {
  SplitMix64 rng(11);
  const auto rel = testing::random_relation(rng, 500, 0, 100);
  const auto idx = build_endpoint_index(rel);
  ASSERT_EQ(idx.size(), 2 * rel.size());
  std::vector<int> starts(rel.size()), ends(rel.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) EXPECT_FALSE(endpoint_less(idx[i], idx[i - 1]));
    const auto& t = rel.at(idx[i].tuple_id);
    if (idx[i].kind == EndpointKind::Start) {
      EXPECT_EQ(idx[i].timestamp, t.ts);
      ++starts[idx[i].tuple_id];
    } else {
      EXPECT_EQ(idx[i].timestamp, t.te);
      ++ends[idx[i].tuple_id];
    }
  }
  for (std::size_t i = 0; i < rel.size(); ++i) {
    EXPECT_EQ(starts[i], 1);
    EXPECT_EQ(ends[i], 1);
  }
}

TEST(Validation, RejectsDegenerateIntervals) {
  Relation rel;
  rel.name = "bad";
  rel.add(0, 2);
  rel.add(3, 3);
  rel.add(5, 4);
  rel.add(1, kInfinity);
  const auto issues = validate_relation(rel);
  ASSERT_EQ(issues.size(), 3u);
  EXPECT_EQ(issues[0].id, 1u);
  EXPECT_EQ(issues[1].id, 2u);
  EXPECT_EQ(issues[2].id, 3u);
  EXPECT_THROW(require_valid(rel), std::invalid_argument);
  EXPECT_NO_THROW(require_valid(testing::example_r()));
}

TEST(Validation, IdsMustMatchPositions) {
  Relation rel;
  rel.tuples.push_back({5, 0, 1, 0});
  EXPECT_EQ(validate_relation(rel).size(), 1u);
}

TEST(Relation, AtThrowsOutOfRange) {
  const auto r = testing::example_r();
  EXPECT_EQ(r.at(2).te, 5);
  EXPECT_THROW(r.at(3), std::out_of_range);
}

}  // namespace
}  // namespace ijoin
