#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ijoin {

/// Logical time. Granularity is whatever the dataset uses.
using Timestamp = std::int64_t;

/// +infinity. Absorbs every shift: kInfinity + x == kInfinity.
inline constexpr Timestamp kInfinity = std::numeric_limits<Timestamp>::max();
inline constexpr Timestamp kMinTimestamp = std::numeric_limits<Timestamp>::min();

/// Saturating `t + offset`. Results are clamped to [kMinTimestamp, kInfinity]
/// and kInfinity is sticky.
constexpr Timestamp shift(Timestamp t, Timestamp offset) noexcept {
  if (t == kInfinity || offset == kInfinity) return kInfinity;
  Timestamp out;
  if (__builtin_add_overflow(t, offset, &out)) {
    return offset > 0 ? kInfinity : kMinTimestamp;
  }
  return out;
}

/// End sorts before Start at equal timestamps (half-open intervals).
enum class EndpointKind : std::uint8_t { End = 0, Start = 1 };

using TupleId = std::uint32_t;

struct IntervalTuple {
  TupleId id = 0;
  Timestamp ts = 0;  // inclusive
  Timestamp te = 0;  // exclusive
  std::uint32_t payload = 0;

  friend bool operator==(const IntervalTuple&, const IntervalTuple&) = default;
};

/// A temporal relation. The tuple at position i carries id i.
struct Relation {
  std::vector<IntervalTuple> tuples;
  std::string name;

  std::size_t size() const noexcept { return tuples.size(); }
  bool empty() const noexcept { return tuples.empty(); }

  /// Bounds-checked lookup; throws std::out_of_range on a bad id.
  const IntervalTuple& at(TupleId id) const { return tuples.at(id); }

  /// Appends [ts, te) with the next free id.
  IntervalTuple& add(Timestamp ts, Timestamp te, std::uint32_t payload = 0);

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.tuples == b.tuples;
  }
};

struct Endpoint {
  Timestamp timestamp = 0;
  EndpointKind kind = EndpointKind::Start;
  TupleId tuple_id = 0;

  /// Field-wise identity, including tuple_id. Use compare_endpoints() for the
  /// sweep order.
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Sweep order: (timestamp, kind); tuple_id is ignored.
constexpr std::strong_ordering compare_endpoints(const Endpoint& a,
                                                 const Endpoint& b) noexcept {
  if (auto c = a.timestamp <=> b.timestamp; c != 0) return c;
  return static_cast<std::uint8_t>(a.kind) <=> static_cast<std::uint8_t>(b.kind);
}

constexpr bool endpoint_less(const Endpoint& a, const Endpoint& b) noexcept {
  return compare_endpoints(a, b) < 0;
}

/// Which of two equal endpoints the sweep handles first. NonStrict lets the
/// r-side endpoint win ties, Strict hands them to the s side.
enum class ComparatorKind : std::uint8_t { Strict, NonStrict };

constexpr bool compare(ComparatorKind op, const Endpoint& a, const Endpoint& b) noexcept {
  auto c = compare_endpoints(a, b);
  return op == ComparatorKind::Strict ? c < 0 : c <= 0;
}

/// Sorted endpoint list of one relation (a simplified Timeline Index).
class EndpointIndex {
 public:
  EndpointIndex() = default;
  explicit EndpointIndex(std::vector<Endpoint> events) : events_(std::move(events)) {}

  std::span<const Endpoint> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const Endpoint& operator[](std::size_t i) const noexcept { return events_[i]; }

  auto begin() const noexcept { return events_.begin(); }
  auto end() const noexcept { return events_.end(); }

  friend bool operator==(const EndpointIndex&, const EndpointIndex&) = default;

 private:
  std::vector<Endpoint> events_;
};

/// Extracts both endpoints of every tuple (Start then End, tuples in id order)
/// and stable-sorts them under compare_endpoints.
EndpointIndex build_endpoint_index(const Relation& rel);

struct ValidationIssue {
  TupleId id;
  std::string reason;
};

/// Empty result means the relation is valid.
std::vector<ValidationIssue> validate_relation(const Relation& rel);

/// Throws std::invalid_argument listing every issue, if any.
void require_valid(const Relation& rel);

std::string to_string(EndpointKind kind);
std::string to_string(const Endpoint& e);

}  // namespace ijoin
