#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ijoin/core.hpp"
#include "ijoin/gapless_map.hpp"

namespace ijoin {

/// Linked hash map: every entry is a separate heap node, chained per bucket
/// and threaded on a doubly-linked list in insertion order for scanning.
/// Baseline for comparing scan cost against GaplessHashMap; same observable
/// map semantics except for scan order after removals.
class ChainedHashMap {
 public:
  explicit ChainedHashMap(std::size_t initial_buckets = 16) {
    std::size_t n = 2;
    while (n < initial_buckets) n <<= 1;
    buckets_.assign(n, nullptr);
  }

  ChainedHashMap(const ChainedHashMap&) = delete;
  ChainedHashMap& operator=(const ChainedHashMap&) = delete;

  ChainedHashMap(ChainedHashMap&& other) noexcept
      : buckets_(std::move(other.buckets_)),
        head_(std::exchange(other.head_, nullptr)),
        tail_(std::exchange(other.tail_, nullptr)),
        size_(std::exchange(other.size_, 0)) {}

  ChainedHashMap& operator=(ChainedHashMap&& other) noexcept {
    if (this != &other) {
      destroy();
      buckets_ = std::move(other.buckets_);
      head_ = std::exchange(other.head_, nullptr);
      tail_ = std::exchange(other.tail_, nullptr);
      size_ = std::exchange(other.size_, 0);
    }
    return *this;
  }

  ~ChainedHashMap() { destroy(); }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t bucket_count() const noexcept { return buckets_.size(); }

  void insert(TupleId key, const IntervalTuple& tuple) {
    if (find(key) != nullptr) {
      throw std::logic_error("ChainedHashMap: duplicate key " + std::to_string(key));
    }
    if (4 * (size_ + 1) > 3 * buckets_.size()) rehash(buckets_.size() * 2);
    Node*& slot = buckets_[bucket_of(key)];
    Node* node = new Node{key, tuple, slot, tail_, nullptr};
    slot = node;
    if (tail_ != nullptr) {
      tail_->list_next = node;
    } else {
      head_ = node;
    }
    tail_ = node;
    ++size_;
  }

  bool remove(TupleId key) {
    Node** link = &buckets_[bucket_of(key)];
    while (*link != nullptr && (*link)->key != key) link = &(*link)->bucket_next;
    Node* node = *link;
    if (node == nullptr) return false;
    *link = node->bucket_next;
    (node->list_prev ? node->list_prev->list_next : head_) = node->list_next;
    (node->list_next ? node->list_next->list_prev : tail_) = node->list_prev;
    delete node;
    --size_;
    return true;
  }

  bool contains(TupleId key) const noexcept { return find(key) != nullptr; }

  std::optional<IntervalTuple> get(TupleId key) const {
    const Node* node = find(key);
    if (node == nullptr) return std::nullopt;
    return node->tuple;
  }

  template <class Visitor>
  void scan(Visitor&& visitor) const {
    for (const Node* n = head_; n != nullptr; n = n->list_next) visitor(n->tuple);
  }

  void clear() noexcept {
    destroy();
    std::fill(buckets_.begin(), buckets_.end(), nullptr);
  }

 private:
  struct Node {
    TupleId key;
    IntervalTuple tuple;
    Node* bucket_next;
    Node* list_prev;
    Node* list_next;
  };

  std::size_t bucket_of(TupleId key) const noexcept {
    return MultiplicativeHash{}(key) & (buckets_.size() - 1);
  }

  const Node* find(TupleId key) const noexcept {
    const Node* n = buckets_[bucket_of(key)];
    while (n != nullptr && n->key != key) n = n->bucket_next;
    return n;
  }

  void rehash(std::size_t new_count) {
    buckets_.assign(new_count, nullptr);
    for (Node* n = head_; n != nullptr; n = n->list_next) {
      Node*& slot = buckets_[bucket_of(n->key)];
      n->bucket_next = slot;
      slot = n;
    }
  }

  void destroy() noexcept {
    Node* n = head_;
    while (n != nullptr) {
      Node* next = n->list_next;
      delete n;
      n = next;
    }
    head_ = tail_ = nullptr;
    size_ = 0;
  }

  std::vector<Node*> buckets_;
  Node* head_ = nullptr;
  Node* tail_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace ijoin
