#include "ijoin/predicate.hpp"

#include <array>
#include <stdexcept>

namespace ijoin {
namespace {

struct Info {
  Predicate predicate;
  std::string_view name;
  Predicate inverse;
  bool allen;
  bool delta;
  bool epsilon;
};

using P = Predicate;

// clang-format off
constexpr std::array<Info, 23> kTable{{
    {P::StartPreceding,        "start-preceding",         P::InverseStartPreceding, false, true,  false},
    {P::InverseStartPreceding, "inverse-start-preceding", P::StartPreceding,        false, true,  false},
    {P::EndFollowing,          "end-following",           P::InverseEndFollowing,   false, false, true},
    {P::InverseEndFollowing,   "inverse-end-following",   P::EndFollowing,          false, false, true},
    {P::Before,                "before",                  P::InverseBefore,         false, true,  false},
    {P::InverseBefore,         "inverse-before",          P::Before,                false, true,  false},
    {P::LeftOverlap,           "left-overlap",            P::RightOverlap,          false, true,  true},
    {P::RightOverlap,          "right-overlap",           P::LeftOverlap,           false, true,  true},
    {P::During,                "during",                  P::ReverseDuring,         false, true,  true},
    {P::ReverseDuring,         "reverse-during",          P::During,                false, true,  true},
    {P::AllenBefore,           "allen-before",            P::AllenAfter,            true,  false, false},
    {P::AllenAfter,            "allen-after",             P::AllenBefore,           true,  false, false},
    {P::Meets,                 "meets",                   P::MetBy,                 true,  false, false},
    {P::MetBy,                 "met-by",                  P::Meets,                 true,  false, false},
    {P::AllenOverlaps,         "overlaps",                P::AllenInverseOverlaps,  true,  false, false},
    {P::AllenInverseOverlaps,  "overlapped-by",           P::AllenOverlaps,         true,  false, false},
    {P::AllenDuring,           "allen-during",            P::AllenInverseDuring,    true,  false, false},
    {P::AllenInverseDuring,    "contains",                P::AllenDuring,           true,  false, false},
    {P::Starts,                "starts",                  P::StartedBy,             true,  false, false},
    {P::StartedBy,             "started-by",              P::Starts,                true,  false, false},
    {P::Finishes,              "finishes",                P::FinishedBy,            true,  false, false},
    {P::FinishedBy,            "finished-by",             P::Finishes,              true,  false, false},
    {P::Equals,                "equals",                  P::Equals,                true,  false, false},
}};
// clang-format on

constexpr std::array<Predicate, 23> kAll = [] {
  std::array<Predicate, 23> out{};
  for (std::size_t i = 0; i < kTable.size(); ++i) out[i] = kTable[i].predicate;
  return out;
}();

const Info& info(Predicate p) noexcept { return kTable[static_cast<std::size_t>(p)]; }

std::string offset_text(const std::optional<Timestamp>& v) {
  return v ? std::to_string(*v) : std::string("inf");
}

}  // namespace

static_assert([] {
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    if (static_cast<std::size_t>(kTable[i].predicate) != i) return false;
  }
  return true;
}());

std::span<const Predicate> all_predicates() noexcept { return kAll; }
std::span<const Predicate> iseql_predicates() noexcept { return std::span(kAll).first(10); }
std::span<const Predicate> allen_predicates() noexcept { return std::span(kAll).subspan(10); }

bool is_allen(Predicate p) noexcept { return info(p).allen; }
bool accepts_delta(Predicate p) noexcept { return info(p).delta; }
bool accepts_epsilon(Predicate p) noexcept { return info(p).epsilon; }
bool accepts_strict(Predicate p) noexcept { return !info(p).allen; }
Predicate inverse(Predicate p) noexcept { return info(p).inverse; }
std::string_view name(Predicate p) noexcept { return info(p).name; }

std::optional<Predicate> parse_predicate(std::string_view text) {
  for (const auto& i : kTable) {
    if (i.name == text) return i.predicate;
  }
  return std::nullopt;
}

void validate(const PredicateSpec& spec) {
  const auto& i = info(spec.predicate);
  if (spec.delta) {
    if (!i.delta) throw std::invalid_argument(std::string(i.name) + " takes no delta");
    if (*spec.delta < 0) throw std::invalid_argument("delta must be >= 0");
  }
  if (spec.epsilon) {
    if (!i.epsilon) throw std::invalid_argument(std::string(i.name) + " takes no epsilon");
    if (*spec.epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
  }
  if (spec.strict && i.allen) {
    throw std::invalid_argument(std::string(i.name) + " is already strict");
  }
}

std::string to_string(const PredicateSpec& spec) {
  std::string out(name(spec.predicate));
  std::string args;
  if (accepts_delta(spec.predicate)) args += "delta=" + offset_text(spec.delta);
  if (accepts_epsilon(spec.predicate)) {
    if (!args.empty()) args += ",";
    args += "epsilon=" + offset_text(spec.epsilon);
  }
  if (spec.strict) {
    if (!args.empty()) args += ",";
    args += "strict";
  }
  if (!args.empty()) out += "(" + args + ")";
  return out;
}

}  // namespace ijoin
