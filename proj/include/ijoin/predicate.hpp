#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ijoin/core.hpp"

namespace ijoin {

/// Interval relations with a join operator. The first block is the ISEQL
/// family (parameterized by delta/epsilon, each with its inverse), the second
/// block Allen's thirteen relations.
enum class Predicate {
  StartPreceding,
  InverseStartPreceding,
  EndFollowing,
  InverseEndFollowing,
  Before,
  InverseBefore,
  LeftOverlap,
  RightOverlap,
  During,
  ReverseDuring,

  AllenBefore,
  AllenAfter,
  Meets,
  MetBy,
  AllenOverlaps,
  AllenInverseOverlaps,
  AllenDuring,
  AllenInverseDuring,
  Starts,
  StartedBy,
  Finishes,
  FinishedBy,
  Equals,
};

/// A join predicate. Absent delta/epsilon means relaxed (infinite). `strict`
/// selects the strict-inequality flavor of an ISEQL relation (the Allen
/// relations are strict by definition and reject the flag).
struct PredicateSpec {
  Predicate predicate = Predicate::StartPreceding;
  std::optional<Timestamp> delta;
  std::optional<Timestamp> epsilon;
  bool strict = false;

  friend bool operator==(const PredicateSpec&, const PredicateSpec&) = default;
};

std::span<const Predicate> all_predicates() noexcept;
std::span<const Predicate> allen_predicates() noexcept;
std::span<const Predicate> iseql_predicates() noexcept;

bool is_allen(Predicate p) noexcept;
bool accepts_delta(Predicate p) noexcept;
bool accepts_epsilon(Predicate p) noexcept;
bool accepts_strict(Predicate p) noexcept;

/// The relation obtained by swapping the arguments.
Predicate inverse(Predicate p) noexcept;

std::string_view name(Predicate p) noexcept;
std::optional<Predicate> parse_predicate(std::string_view text);

/// Throws std::invalid_argument for negative offsets or parameters the
/// relation does not define.
void validate(const PredicateSpec& spec);

/// Human-readable form, e.g. "left-overlap(delta=3,epsilon=inf)".
std::string to_string(const PredicateSpec& spec);

/// Sorted set of (r_id, s_id) pairs; the unit of result comparison.
using IdPair = std::pair<TupleId, TupleId>;
using PairSet = std::vector<IdPair>;

}  // namespace ijoin
