#include "ijoin/core.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ijoin {

IntervalTuple& Relation::add(Timestamp ts, Timestamp te, std::uint32_t payload) {
  tuples.push_back({static_cast<TupleId>(tuples.size()), ts, te, payload});
  return tuples.back();
}

EndpointIndex build_endpoint_index(const Relation& rel) {
  std::vector<Endpoint> events;
  events.reserve(2 * rel.size());
  for (const auto& t : rel.tuples) {
    events.push_back({t.ts, EndpointKind::Start, t.id});
    events.push_back({t.te, EndpointKind::End, t.id});
  }
  std::stable_sort(events.begin(), events.end(), endpoint_less);
  return EndpointIndex(std::move(events));
}

std::vector<ValidationIssue> validate_relation(const Relation& rel) {
  std::vector<ValidationIssue> issues;
  for (std::size_t i = 0; i < rel.tuples.size(); ++i) {
    const auto& t = rel.tuples[i];
    const auto pos = static_cast<TupleId>(i);
    if (t.id != pos) {
      issues.push_back({pos, "id mismatch at position " + std::to_string(i) +
                                 " (id " + std::to_string(t.id) + ")"});
    }
    if (t.te == kInfinity) {
      issues.push_back({pos, "infinite end at id " + std::to_string(i)});
    } else if (t.ts == t.te) {
      issues.push_back({pos, "empty interval at id " + std::to_string(i)});
    } else if (t.ts > t.te) {
      issues.push_back({pos, "inverted interval at id " + std::to_string(i)});
    }
  }
  return issues;
}

void require_valid(const Relation& rel) {
  auto issues = validate_relation(rel);
  if (issues.empty()) return;
  std::ostringstream msg;
  msg << "invalid relation";
  if (!rel.name.empty()) msg << " '" << rel.name << "'";
  msg << ":";
  for (const auto& issue : issues) msg << " " << issue.reason << ";";
  throw std::invalid_argument(msg.str());
}

std::string to_string(EndpointKind kind) {
  return kind == EndpointKind::Start ? "start" : "end";
}

std::string to_string(const Endpoint& e) {
  std::ostringstream out;
  out << "<" << e.timestamp << "," << to_string(e.kind) << "," << e.tuple_id << ">";
  return out.str();
}

}  // namespace ijoin
