#include "ijoin/oracle.hpp"

#include <algorithm>

namespace ijoin::oracle {
namespace {

// a < b when strict, a <= b otherwise
bool lt(Timestamp a, Timestamp b, bool strict) { return strict ? a < b : a <= b; }

bool within(const std::optional<Timestamp>& bound, Timestamp distance) {
  return !bound || distance <= *bound;
}

bool start_preceding(const PredicateSpec& p, const IntervalTuple& r, const IntervalTuple& s) {
  return lt(r.ts, s.ts, p.strict) && s.ts < r.te && within(p.delta, s.ts - r.ts);
}

bool end_following(const PredicateSpec& p, const IntervalTuple& r, const IntervalTuple& s) {
  return r.ts < s.te && lt(s.te, r.te, p.strict) && within(p.epsilon, r.te - s.te);
}

bool before(const PredicateSpec& p, const IntervalTuple& r, const IntervalTuple& s) {
  return lt(r.te, s.ts, p.strict) && within(p.delta, s.ts - r.te);
}

bool left_overlap(const PredicateSpec& p, const IntervalTuple& r, const IntervalTuple& s) {
  return lt(r.ts, s.ts, p.strict) && s.ts < r.te && lt(r.te, s.te, p.strict) &&
         within(p.delta, s.ts - r.ts) && within(p.epsilon, s.te - r.te);
}

bool during(const PredicateSpec& p, const IntervalTuple& r, const IntervalTuple& s) {
  return lt(s.ts, r.ts, p.strict) && lt(r.te, s.te, p.strict) &&
         within(p.delta, r.ts - s.ts) && within(p.epsilon, s.te - r.te);
}

bool allen_before(const IntervalTuple& r, const IntervalTuple& s) { return r.te < s.ts; }
bool meets(const IntervalTuple& r, const IntervalTuple& s) { return r.te == s.ts; }
bool overlaps(const IntervalTuple& r, const IntervalTuple& s) {
  return r.ts < s.ts && s.ts < r.te && r.te < s.te;
}
bool allen_during(const IntervalTuple& r, const IntervalTuple& s) {
  return s.ts < r.ts && r.te < s.te;
}
bool starts(const IntervalTuple& r, const IntervalTuple& s) {
  return r.ts == s.ts && r.te < s.te;
}
bool finishes(const IntervalTuple& r, const IntervalTuple& s) {
  return s.ts < r.ts && r.te == s.te;
}
bool equals(const IntervalTuple& r, const IntervalTuple& s) {
  return r.ts == s.ts && r.te == s.te;
}

}  // namespace

bool eval_predicate(const PredicateSpec& p, const IntervalTuple& r, const IntervalTuple& s) {
  switch (p.predicate) {
    case Predicate::StartPreceding: return start_preceding(p, r, s);
    case Predicate::InverseStartPreceding: return start_preceding(p, s, r);
    case Predicate::EndFollowing: return end_following(p, r, s);
    case Predicate::InverseEndFollowing: return end_following(p, s, r);
    case Predicate::Before: return before(p, r, s);
    case Predicate::InverseBefore: return before(p, s, r);
    case Predicate::LeftOverlap: return left_overlap(p, r, s);
    case Predicate::RightOverlap: return left_overlap(p, s, r);
    case Predicate::During: return during(p, r, s);
    case Predicate::ReverseDuring: return during(p, s, r);
    case Predicate::AllenBefore: return allen_before(r, s);
    case Predicate::AllenAfter: return allen_before(s, r);
    case Predicate::Meets: return meets(r, s);
    case Predicate::MetBy: return meets(s, r);
    case Predicate::AllenOverlaps: return overlaps(r, s);
    case Predicate::AllenInverseOverlaps: return overlaps(s, r);
    case Predicate::AllenDuring: return allen_during(r, s);
    case Predicate::AllenInverseDuring: return allen_during(s, r);
    case Predicate::Starts: return starts(r, s);
    case Predicate::StartedBy: return starts(s, r);
    case Predicate::Finishes: return finishes(r, s);
    case Predicate::FinishedBy: return finishes(s, r);
    case Predicate::Equals: return equals(r, s);
  }
  return false;
}

PairSet nested_loop_join(const PredicateSpec& spec, const Relation& r, const Relation& s) {
  PairSet out;
  for (const auto& rt : r.tuples) {
    for (const auto& st : s.tuples) {
      if (eval_predicate(spec, rt, st)) out.emplace_back(rt.id, st.id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ijoin::oracle
