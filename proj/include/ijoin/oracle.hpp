#pragma once

#include "ijoin/core.hpp"
#include "ijoin/predicate.hpp"

namespace ijoin::oracle {

/// Direct evaluation of the relation's defining inequalities, conjoined with
/// the delta/epsilon bounds when present.
bool eval_predicate(const PredicateSpec& spec, const IntervalTuple& r, const IntervalTuple& s);

/// Quadratic reference join; returns the sorted pair set.
PairSet nested_loop_join(const PredicateSpec& spec, const Relation& r, const Relation& s);

}  // namespace ijoin::oracle
