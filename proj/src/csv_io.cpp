#include "ijoin/csv_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace ijoin {
namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) return out;
    line.remove_prefix(comma + 1);
  }
}

template <class T>
T parse_field(std::string_view field, const std::string& source, std::size_t line,
              const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(source, line,
                     "bad " + std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

bool is_header(std::string_view line) {
  return !line.empty() && std::isalpha(static_cast<unsigned char>(line.front()));
}

/// Calls fn(fields, line_number) for every non-blank data line.
template <class Fn>
void for_each_record(std::istream& in, const std::string& source, std::size_t arity, Fn fn) {
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (first && is_header(line)) {
      first = false;
      continue;
    }
    first = false;
    const auto fields = split(line);
    if (fields.size() != arity) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(arity) + " fields, got " +
                           std::to_string(fields.size()));
    }
    fn(fields, line_no);
  }
  if (in.bad()) throw std::runtime_error(source + ": read error");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

Relation read_csv(std::istream& in, const std::string& source) {
  Relation rel;
  rel.name = source;
  for_each_record(in, source, 3, [&](const auto& f, std::size_t line) {
    const auto ts = parse_field<Timestamp>(f[0], source, line, "ts");
    const auto te = parse_field<Timestamp>(f[1], source, line, "te");
    const auto payload = parse_field<std::uint32_t>(f[2], source, line, "payload");
    rel.add(ts, te, payload);
  });
  require_valid(rel);
  return rel;
}

Relation read_csv(const std::string& path) {
  auto in = open_in(path);
  return read_csv(in, path);
}

void write_csv(std::ostream& out, const Relation& rel) {
  out << "ts,te,payload\n";
  for (const auto& t : rel.tuples) out << t.ts << ',' << t.te << ',' << t.payload << '\n';
}

void write_csv(const std::string& path, const Relation& rel) {
  auto out = open_out(path);
  write_csv(out, rel);
  finish(out, path);
}

PairSet read_pairs_csv(std::istream& in, const std::string& source) {
  PairSet pairs;
  for_each_record(in, source, 2, [&](const auto& f, std::size_t line) {
    pairs.emplace_back(parse_field<TupleId>(f[0], source, line, "r_id"),
                       parse_field<TupleId>(f[1], source, line, "s_id"));
  });
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

PairSet read_pairs_csv(const std::string& path) {
  auto in = open_in(path);
  return read_pairs_csv(in, path);
}

void write_pairs_csv(std::ostream& out, PairSet pairs) {
  std::sort(pairs.begin(), pairs.end());
  out << "r_id,s_id\n";
  for (const auto& [r, s] : pairs) out << r << ',' << s << '\n';
}

void write_pairs_csv(const std::string& path, PairSet pairs) {
  auto out = open_out(path);
  write_pairs_csv(out, std::move(pairs));
  finish(out, path);
}

std::vector<Endpoint> read_endpoints_csv(std::istream& in, const std::string& source) {
  std::vector<Endpoint> out;
  for_each_record(in, source, 3, [&](const auto& f, std::size_t line) {
    Endpoint e;
    e.timestamp = parse_field<Timestamp>(f[0], source, line, "timestamp");
    if (f[1] == "start") {
      e.kind = EndpointKind::Start;
    } else if (f[1] == "end") {
      e.kind = EndpointKind::End;
    } else {
      throw ParseError(source, line, "bad kind '" + std::string(f[1]) + "'");
    }
    e.tuple_id = parse_field<TupleId>(f[2], source, line, "tuple_id");
    out.push_back(e);
  });
  return out;
}

void write_endpoints_csv(std::ostream& out, const EndpointIndex& index) {
  out << "timestamp,kind,tuple_id\n";
  for (const auto& e : index) {
    out << e.timestamp << ',' << to_string(e.kind) << ',' << e.tuple_id << '\n';
  }
}

}  // namespace ijoin
