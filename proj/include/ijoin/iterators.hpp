#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ijoin/core.hpp"

namespace ijoin {

/// Forward-only cursor over a sorted endpoint sequence.
///
/// endpoint() is only valid while finished() is false. Every implementation
/// must emit endpoints in non-decreasing compare_endpoints order. finished()
/// is allowed to block (see StreamSourceIterator), hence non-const.
template <class It>
concept EndpointCursor = std::movable<It> && requires(It& it) {
  { it.finished() } -> std::same_as<bool>;
  { it.endpoint() } -> std::convertible_to<Endpoint>;
  it.advance();
};

/// Walks a physical EndpointIndex. The index must outlive the iterator.
class IndexIterator {
 public:
  explicit IndexIterator(std::span<const Endpoint> events) noexcept : events_(events) {}
  explicit IndexIterator(const EndpointIndex& index) noexcept : events_(index.events()) {}

  bool finished() const noexcept { return pos_ == events_.size(); }
  const Endpoint& endpoint() const noexcept { return events_[pos_]; }
  void advance() noexcept { ++pos_; }

 private:
  std::span<const Endpoint> events_;
  std::size_t pos_ = 0;
};

/// Passes through only the endpoints of one kind.
template <EndpointCursor Source>
class FilteringIterator {
 public:
  FilteringIterator(Source source, EndpointKind kind)
      : source_(std::move(source)), kind_(kind) {
    skip();
  }

  bool finished() { return source_.finished(); }
  decltype(auto) endpoint() { return source_.endpoint(); }
  void advance() {
    source_.advance();
    skip();
  }

 private:
  void skip() {
    while (!source_.finished() && Endpoint(source_.endpoint()).kind != kind_) {
      source_.advance();
    }
  }

  Source source_;
  EndpointKind kind_;
};

/// Moves every endpoint by a constant (saturating) offset and relabels its
/// kind. Order is preserved because the shift is uniform.
template <EndpointCursor Source>
class ShiftingIterator {
 public:
  ShiftingIterator(Source source, Timestamp offset, EndpointKind kind)
      : source_(std::move(source)), offset_(offset), kind_(kind) {}

  bool finished() { return source_.finished(); }
  Endpoint endpoint() {
    Endpoint e = source_.endpoint();
    e.timestamp = shift(e.timestamp, offset_);
    e.kind = kind_;
    return e;
  }
  void advance() { source_.advance(); }

 private:
  Source source_;
  Timestamp offset_;
  EndpointKind kind_;
};

/// Sorted interleaving of two sorted sources. The first source is taken
/// only when its head is strictly smaller, so ties go to the second source.
template <EndpointCursor First, EndpointCursor Second>
class MergingIterator {
 public:
  MergingIterator(First first, Second second)
      : first_(std::move(first)), second_(std::move(second)) {}

  bool finished() { return first_.finished() && second_.finished(); }

  Endpoint endpoint() {
    return take_first() ? Endpoint(first_.endpoint()) : Endpoint(second_.endpoint());
  }

  void advance() {
    if (take_first()) {
      first_.advance();
    } else {
      second_.advance();
    }
    choice_ = Choice::Unknown;
  }

 private:
  enum class Choice : std::uint8_t { Unknown, TakeFirst, TakeSecond };

  bool take_first() {
    if (choice_ == Choice::Unknown) {
      bool first;
      if (second_.finished()) {
        first = true;
      } else if (first_.finished()) {
        first = false;
      } else {
        first = endpoint_less(first_.endpoint(), second_.endpoint());
      }
      choice_ = first ? Choice::TakeFirst : Choice::TakeSecond;
    }
    return choice_ == Choice::TakeFirst;
  }

  First first_;
  Second second_;
  Choice choice_ = Choice::Unknown;
};

/// For streams carrying two End endpoints per tuple: forwards the first End
/// of each tuple and swallows the second. Start endpoints pass unchanged.
template <EndpointCursor Source>
class FirstEndIterator {
 public:
  explicit FirstEndIterator(Source source) : source_(std::move(source)) { settle(); }

  bool finished() { return source_.finished(); }
  decltype(auto) endpoint() { return source_.endpoint(); }
  void advance() {
    const Endpoint e = source_.endpoint();
    if (e.kind == EndpointKind::End) one_end_seen_.insert(e.tuple_id);
    source_.advance();
    settle();
  }

  /// Tuples whose first End was forwarded but whose second End is pending.
  std::size_t pending() const noexcept { return one_end_seen_.size(); }

 private:
  void settle() {
    while (!source_.finished()) {
      const Endpoint e = source_.endpoint();
      if (e.kind != EndpointKind::End || one_end_seen_.erase(e.tuple_id) == 0) return;
      source_.advance();
    }
  }

  Source source_;
  std::unordered_set<TupleId> one_end_seen_;
};

/// For streams carrying two Start endpoints per tuple: swallows the first
/// Start of each tuple and forwards the second. End endpoints pass unchanged.
template <EndpointCursor Source>
class SecondStartIterator {
 public:
  explicit SecondStartIterator(Source source) : source_(std::move(source)) { settle(); }

  bool finished() { return source_.finished(); }
  decltype(auto) endpoint() { return source_.endpoint(); }
  void advance() {
    const Endpoint e = source_.endpoint();
    if (e.kind == EndpointKind::Start) one_start_seen_.erase(e.tuple_id);
    source_.advance();
    settle();
  }

  std::size_t pending() const noexcept { return one_start_seen_.size(); }

 private:
  void settle() {
    while (!source_.finished()) {
      const Endpoint e = source_.endpoint();
      if (e.kind != EndpointKind::Start || one_start_seen_.contains(e.tuple_id)) return;
      one_start_seen_.insert(e.tuple_id);
      source_.advance();
    }
  }

  Source source_;
  std::unordered_set<TupleId> one_start_seen_;
};

inline IndexIterator index_iterator(const EndpointIndex& index) noexcept {
  return IndexIterator(index);
}

template <EndpointCursor Source>
FilteringIterator<Source> filtering_iterator(Source source, EndpointKind kind) {
  return {std::move(source), kind};
}

template <EndpointCursor Source>
ShiftingIterator<Source> shifting_iterator(Source source, Timestamp offset,
                                           EndpointKind kind) {
  return {std::move(source), offset, kind};
}

template <EndpointCursor First, EndpointCursor Second>
MergingIterator<First, Second> merging_iterator(First first, Second second) {
  return {std::move(first), std::move(second)};
}

template <EndpointCursor Source>
FirstEndIterator<Source> first_end_iterator(Source source) {
  return FirstEndIterator<Source>(std::move(source));
}

template <EndpointCursor Source>
SecondStartIterator<Source> second_start_iterator(Source source) {
  return SecondStartIterator<Source>(std::move(source));
}

/// Exhausts a cursor into a vector.
template <EndpointCursor It>
std::vector<Endpoint> drain(It it) {
  std::vector<Endpoint> out;
  while (!it.finished()) {
    out.push_back(it.endpoint());
    it.advance();
  }
  return out;
}

}  // namespace ijoin
