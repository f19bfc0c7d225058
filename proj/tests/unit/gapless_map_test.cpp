#include "ijoin/gapless_map.hpp"

#include <gtest/gtest.h>

#include <map>

#include "ijoin/chained_map.hpp"
#include "ijoin/dataset.hpp"

namespace ijoin {
namespace {

IntervalTuple tuple(TupleId id) { return {id, id, Timestamp{id} + 1, id * 3}; }

// Places 5 and 7 in bucket 0, 9 in bucket 1 and 2 in bucket 2.
struct FixedHash {
  std::uint32_t operator()(TupleId key) const noexcept {
    switch (key) {
      case 5:
      case 7: return 0;
      case 9: return 1;
      default: return 2;
    }
  }
};

std::vector<TupleId> keys_of(const GaplessHashMap<FixedHash>& m) {
  std::vector<TupleId> out;
  for (const auto& e : m.elements()) out.push_back(e.key);
  return out;
}

TEST(GaplessHashMap, RemovalMovesLastEntryIntoHole) {
  GaplessHashMap<FixedHash> m(16);
  for (TupleId k : {7u, 5u, 9u, 2u}) m.insert(k, tuple(k));
  EXPECT_EQ(keys_of(m), (std::vector<TupleId>{7, 5, 9, 2}));
  EXPECT_EQ(m.chain(0), (std::vector<TupleId>{5, 7}));
  ASSERT_EQ(m.audit(), "");

  EXPECT_TRUE(m.remove(7));
  EXPECT_EQ(keys_of(m), (std::vector<TupleId>{2, 5, 9}));
  EXPECT_EQ(m.chain(0), (std::vector<TupleId>{5}));
  EXPECT_EQ(m.chain(2), (std::vector<TupleId>{2}));
  // 2 now sits at position 0; its bucket cell points there.
  EXPECT_EQ(m.buckets()[2], 0u);
  EXPECT_EQ(m.elements()[0].bucket_prev, GaplessHashMap<FixedHash>::kBucketTag | 2u);
  EXPECT_EQ(m.tuples()[0], tuple(2));
  EXPECT_EQ(m.audit(), "");
}

TEST(GaplessHashMap, RemoveChainHeadRepairsSuccessor) {
  GaplessHashMap<FixedHash> m(16);
  for (TupleId k : {7u, 5u, 9u}) m.insert(k, tuple(k));
  EXPECT_TRUE(m.remove(5));
  EXPECT_EQ(m.chain(0), (std::vector<TupleId>{7}));
  EXPECT_EQ(m.audit(), "");
  EXPECT_FALSE(m.remove(5));
  EXPECT_TRUE(m.remove(9));
  EXPECT_TRUE(m.remove(7));
  EXPECT_TRUE(m.empty());
  EXPECT_EQ(m.audit(), "");
}

TEST(GaplessHashMap, DuplicateInsertThrows) {
  GaplessHashMap<> m;
  m.insert(1, tuple(1));
  EXPECT_THROW(m.insert(1, tuple(1)), std::logic_error);
  EXPECT_EQ(m.size(), 1u);
}

TEST(GaplessHashMap, MissingKeyRemoveIsNoOp) {
  GaplessHashMap<> m;
  EXPECT_FALSE(m.remove(4));
  EXPECT_FALSE(m.get(4).has_value());
}

TEST(GaplessHashMap, GrowsAtThreeQuartersLoad) {
  GaplessHashMap<> m(4);
  EXPECT_EQ(m.bucket_count(), 4u);
  for (TupleId k = 0; k < 3; ++k) m.insert(k, tuple(k));
  EXPECT_EQ(m.bucket_count(), 4u);
  m.insert(3, tuple(3));
  EXPECT_EQ(m.bucket_count(), 8u);
  for (TupleId k = 0; k < 4; ++k) EXPECT_TRUE(m.remove(k));
  EXPECT_EQ(m.bucket_count(), 8u);
  EXPECT_EQ(m.audit(), "");
}

TEST(GaplessHashMap, CongruentKeysShareChains) {
  GaplessHashMap<> m(16);
  for (TupleId k = 0; k < 6; ++k) m.insert(k * 16, tuple(k * 16));
  EXPECT_EQ(m.audit(), "");
  for (TupleId k = 0; k < 6; k += 2) EXPECT_TRUE(m.remove(k * 16));
  for (TupleId k = 0; k < 6; ++k) EXPECT_EQ(m.contains(k * 16), k % 2 == 1);
  EXPECT_EQ(m.audit(), "");
}

template <class Map>
void run_model(Map& m, std::uint64_t seed, int ops, bool audit) {
  std::map<TupleId, IntervalTuple> model;
  SplitMix64 rng(seed);
  for (int op = 0; op < ops; ++op) {
    const auto dice = rng.next_in(0, 99);
    const auto key = static_cast<TupleId>(rng.next_in(0, 2047));
    if (dice < 55) {
      if (model.contains(key)) {
        EXPECT_THROW(m.insert(key, tuple(key)), std::logic_error);
      } else {
        m.insert(key, tuple(key));
        model.emplace(key, tuple(key));
      }
    } else if (dice < 95) {
      ASSERT_EQ(m.remove(key), model.erase(key) == 1);
    } else {
      std::map<TupleId, IntervalTuple> seen;
      m.scan([&](const IntervalTuple& t) { seen.emplace(t.id, t); });
      ASSERT_EQ(seen, model);
    }
    ASSERT_EQ(m.size(), model.size());
    ASSERT_EQ(m.contains(key), model.contains(key));
    if constexpr (requires { m.audit(); }) {
      if (audit) ASSERT_EQ(m.audit(), "") << "after op " << op;
    }
  }
}

TEST(GaplessHashMap, ScanTouchesExactlyLiveEntries) {
  GaplessHashMap<> m;
  SplitMix64 rng(4);
  for (TupleId k = 0; k < 500; ++k) m.insert(k, tuple(k));
  for (int i = 0; i < 300; ++i) m.remove(static_cast<TupleId>(rng.next_in(0, 499)));
  std::size_t visited = 0;
  const IntervalTuple* expected = m.tuples().data();
  m.scan([&](const IntervalTuple& t) {
    EXPECT_EQ(&t, expected++);
    ++visited;
  });
  EXPECT_EQ(visited, m.size());
}

TEST(GaplessHashMap, ModelCheckAgainstStdMap) {
  GaplessHashMap<> m(2);
  run_model(m, 42, 20000, true);
}

TEST(ChainedHashMap, ModelCheckAgainstStdMap) {
  ChainedHashMap m(2);
  run_model(m, 43, 20000, false);
}

TEST(ChainedHashMap, ScanFollowsInsertionOrder) {
  ChainedHashMap m;
  for (TupleId k : {9u, 3u, 27u, 1u}) m.insert(k, tuple(k));
  m.remove(3);
  std::vector<TupleId> order;
  m.scan([&](const IntervalTuple& t) { order.push_back(t.id); });
  EXPECT_EQ(order, (std::vector<TupleId>{9, 27, 1}));
  EXPECT_THROW(m.insert(9, tuple(9)), std::logic_error);
}

TEST(ChainedHashMap, MoveTransfersOwnership) {
  ChainedHashMap a;
  a.insert(1, tuple(1));
  ChainedHashMap b(std::move(a));
  EXPECT_EQ(b.size(), 1u);
  EXPECT_TRUE(b.contains(1));
  a = std::move(b);
  EXPECT_TRUE(a.contains(1));
}

}  // namespace
}  // namespace ijoin
