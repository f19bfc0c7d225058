#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "ijoin/core.hpp"

namespace ijoin {

/// Multiplicative hashing of tuple ids. Only the low bits are used for
/// bucket selection, so keys congruent modulo the bucket count collide.
struct MultiplicativeHash {
  std::uint32_t operator()(TupleId key) const noexcept {
    return static_cast<std::uint32_t>(key * 0x9E3779B1u);
  }
};

/// Hash map from tuple id to tuple whose live entries occupy the contiguous
/// positions [0, size()). Deletion moves the last entry into the hole, so a
/// full scan is a sequential pass over a plain tuple array.
///
/// Element metadata (key plus bucket-chain links) and tuples live in two
/// position-aligned arrays. Each element keeps a back-reference to whichever
/// slot points at it (a bucket cell or its chain predecessor) so that moving
/// it only needs O(1) pointer repair.
///
/// Single writer. Concurrent scans are fine while nothing mutates.
template <class Hash = MultiplicativeHash>
class GaplessHashMap {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  // Set on bucket_prev when it refers to a bucket-table cell.
  static constexpr std::uint32_t kBucketTag = 0x80000000u;

  struct Element {
    TupleId key;
    std::uint32_t bucket_next;
    std::uint32_t bucket_prev;
  };

  explicit GaplessHashMap(std::size_t initial_buckets = 16, Hash hash = Hash{})
      : hash_(hash) {
    std::size_t n = 2;
    while (n < initial_buckets) n <<= 1;
    buckets_.assign(n, kNone);
  }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::size_t bucket_count() const noexcept { return buckets_.size(); }

  std::size_t bucket_of(TupleId key) const noexcept {
    return hash_(key) & (buckets_.size() - 1);
  }

  /// Appends the entry at position size(). Inserting a key that is already
  /// present throws std::logic_error.
  void insert(TupleId key, const IntervalTuple& tuple) {
    if (find(key) != kNone) {
      throw std::logic_error("GaplessHashMap: duplicate key " + std::to_string(key));
    }
    if (4 * (elements_.size() + 1) > 3 * buckets_.size()) rehash(buckets_.size() * 2);
    const auto pos = static_cast<std::uint32_t>(elements_.size());
    const auto b = static_cast<std::uint32_t>(bucket_of(key));
    const std::uint32_t head = buckets_[b];
    elements_.push_back({key, head, kBucketTag | b});
    tuples_.push_back(tuple);
    if (head != kNone) elements_[head].bucket_prev = pos;
    buckets_[b] = pos;
  }

  /// Returns false (and does nothing) when the key is absent.
  bool remove(TupleId key) {
    const std::uint32_t pos = find(key);
    if (pos == kNone) return false;

    unlink(pos);
    const auto last = static_cast<std::uint32_t>(elements_.size() - 1);
    if (pos != last) {
      elements_[pos] = elements_[last];
      tuples_[pos] = tuples_[last];
      forward_ref(elements_[pos].bucket_prev) = pos;
      if (elements_[pos].bucket_next != kNone) {
        elements_[elements_[pos].bucket_next].bucket_prev = pos;
      }
    }
    elements_.pop_back();
    tuples_.pop_back();
    return true;
  }

  bool contains(TupleId key) const noexcept { return find(key) != kNone; }

  std::optional<IntervalTuple> get(TupleId key) const {
    const std::uint32_t pos = find(key);
    if (pos == kNone) return std::nullopt;
    return tuples_[pos];
  }

  /// Calls visitor(tuple) once per live entry, in storage order.
  template <class Visitor>
  void scan(Visitor&& visitor) const {
    for (const auto& t : tuples_) visitor(t);
  }

  std::span<const IntervalTuple> tuples() const noexcept { return tuples_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::span<const std::uint32_t> buckets() const noexcept { return buckets_; }

  /// Keys along one bucket chain, head first.
  std::vector<TupleId> chain(std::size_t bucket) const {
    std::vector<TupleId> keys;
    for (auto i = buckets_.at(bucket); i != kNone; i = elements_[i].bucket_next) {
      keys.push_back(elements_[i].key);
    }
    return keys;
  }

  /// Full structural audit. Returns an empty string when every invariant
  /// holds, otherwise a description of the first violation.
  std::string audit() const {
    if (elements_.size() != tuples_.size()) return "element/tuple arrays differ in length";
    const auto n = static_cast<std::uint32_t>(elements_.size());
    for (std::uint32_t b = 0; b < buckets_.size(); ++b) {
      const auto head = buckets_[b];
      if (head == kNone) continue;
      if (head >= n) return "bucket " + std::to_string(b) + " points past tail";
      if (elements_[head].bucket_prev != (kBucketTag | b)) {
        return "head of bucket " + std::to_string(b) + " has wrong back-reference";
      }
    }
    std::unordered_set<TupleId> keys;
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto& e = elements_[i];
      if (!keys.insert(e.key).second) return "duplicate key " + std::to_string(e.key);
      const auto prev = e.bucket_prev;
      if ((prev & kBucketTag) == 0 && prev >= n) {
        return "element " + std::to_string(i) + " back-reference past tail";
      }
      if ((prev & kBucketTag) != 0 && (prev & ~kBucketTag) >= buckets_.size()) {
        return "element " + std::to_string(i) + " back-reference past bucket table";
      }
      if (forward_ref(prev) != i) {
        return "element " + std::to_string(i) + " is not referenced by its bucket_prev slot";
      }
      if (e.bucket_next != kNone) {
        if (e.bucket_next >= n) return "element " + std::to_string(i) + " chains past tail";
        if (elements_[e.bucket_next].bucket_prev != i) {
          return "successor of element " + std::to_string(i) + " has wrong back-reference";
        }
      }
    }
    std::size_t reachable = 0;
    for (std::size_t b = 0; b < buckets_.size(); ++b) {
      std::size_t steps = 0;
      for (auto i = buckets_[b]; i != kNone; i = elements_[i].bucket_next) {
        if (bucket_of(elements_[i].key) != b) {
          return "key " + std::to_string(elements_[i].key) + " chained in wrong bucket";
        }
        if (++steps > n) return "cycle in bucket " + std::to_string(b);
        ++reachable;
      }
    }
    if (reachable != n) return "some live keys are unreachable from the bucket table";
    return {};
  }

  void clear() noexcept {
    elements_.clear();
    tuples_.clear();
    std::fill(buckets_.begin(), buckets_.end(), kNone);
  }

 private:
  std::uint32_t find(TupleId key) const noexcept {
    auto i = buckets_[bucket_of(key)];
    while (i != kNone && elements_[i].key != key) i = elements_[i].bucket_next;
    return i;
  }

  std::uint32_t& forward_ref(std::uint32_t prev) noexcept {
    if (prev & kBucketTag) return buckets_[prev & ~kBucketTag];
    return elements_[prev].bucket_next;
  }
  std::uint32_t forward_ref(std::uint32_t prev) const noexcept {
    if (prev & kBucketTag) return buckets_[prev & ~kBucketTag];
    return elements_[prev].bucket_next;
  }

  void unlink(std::uint32_t pos) noexcept {
    const Element& e = elements_[pos];
    forward_ref(e.bucket_prev) = e.bucket_next;
    if (e.bucket_next != kNone) elements_[e.bucket_next].bucket_prev = e.bucket_prev;
  }

  void rehash(std::size_t new_count) {
    buckets_.assign(new_count, kNone);
    for (std::uint32_t pos = 0; pos < elements_.size(); ++pos) {
      auto& e = elements_[pos];
      const auto b = static_cast<std::uint32_t>(bucket_of(e.key));
      e.bucket_next = buckets_[b];
      e.bucket_prev = kBucketTag | b;
      if (e.bucket_next != kNone) elements_[e.bucket_next].bucket_prev = pos;
      buckets_[b] = pos;
    }
  }

  Hash hash_;
  std::vector<std::uint32_t> buckets_;
  std::vector<Element> elements_;
  std::vector<IntervalTuple> tuples_;
};

}  // namespace ijoin
