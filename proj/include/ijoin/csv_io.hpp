#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ijoin/core.hpp"
#include "ijoin/predicate.hpp"

namespace ijoin {

/// Malformed input; `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Tuple files: `ts,te,payload` per line, optional header line starting with a
// letter, ids by line order. Blank lines are skipped. Relations are checked
// with require_valid after parsing.
Relation read_csv(std::istream& in, const std::string& source = "<stream>");
Relation read_csv(const std::string& path);
void write_csv(std::ostream& out, const Relation& rel);
void write_csv(const std::string& path, const Relation& rel);

// Pair files: `r_id,s_id`, header `r_id,s_id`, sorted lexicographically.
PairSet read_pairs_csv(std::istream& in, const std::string& source = "<stream>");
PairSet read_pairs_csv(const std::string& path);
void write_pairs_csv(std::ostream& out, PairSet pairs);
void write_pairs_csv(const std::string& path, PairSet pairs);

// Endpoint dumps: `timestamp,kind,tuple_id` with kind `start` or `end`.
std::vector<Endpoint> read_endpoints_csv(std::istream& in, const std::string& source = "<stream>");
void write_endpoints_csv(std::ostream& out, const EndpointIndex& index);

}  // namespace ijoin
