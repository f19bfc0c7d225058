#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ijoin/csv_io.hpp"
#include "ijoin/dataset.hpp"
#include "ijoin/joins.hpp"
#include "ijoin/oracle.hpp"
#include "ijoin/report.hpp"

namespace ijoin::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

/// Usage problems found after CLI11 parsing (bad parameter combinations).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A check (verify, bench consistency) that ran and failed.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecArgs {
  std::string pred = "start-preceding";
  std::optional<Timestamp> delta;
  std::optional<Timestamp> epsilon;
  bool strict = false;

  void attach(CLI::App& app) {
    app.add_option("--pred", pred, "Interval relation, e.g. before, left-overlap, meets");
    app.add_option("--delta", delta, "Start offset bound (absent = unbounded)");
    app.add_option("--epsilon", epsilon, "End offset bound (absent = unbounded)");
    app.add_flag("--strict", strict, "Strict-inequality flavor of an ISEQL relation");
  }

  PredicateSpec spec() const {
    const auto p = parse_predicate(pred);
    if (!p) throw UsageError("unknown predicate '" + pred + "'");
    PredicateSpec s{*p, delta, epsilon, strict};
    try {
      validate(s);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return s;
  }
};

struct EngineArgs {
  std::string engine = "lazy";
  std::size_t capacity = kDefaultLazyCapacity;
  std::string formulation = "start-preceding";
  std::string active_set = "gapless";

  void attach(CLI::App& app, bool allow_both) {
    std::vector<std::string> engines{"eager", "lazy"};
    if (allow_both) engines.push_back("both");
    app.add_option("--engine", engine, "Sweep engine")->check(CLI::IsMember(engines));
    app.add_option("--capacity", capacity, "Lazy buffer capacity in tuples")
        ->check(CLI::PositiveNumber);
    app.add_option("--formulation", formulation,
                   "Building block for right-overlap and during")
        ->check(CLI::IsMember({"start-preceding", "end-following"}));
    app.add_option("--active-set", active_set, "Active tuple set")
        ->check(CLI::IsMember({"gapless", "chained"}));
  }

  JoinOptions options(EngineKind kind) const {
    JoinOptions o;
    o.engine = kind;
    o.capacity = capacity;
    o.formulation = formulation == "end-following" ? Formulation::EndFollowing
                                                   : Formulation::StartPreceding;
    o.active_set = active_set == "chained" ? ActiveSetKind::Chained : ActiveSetKind::Gapless;
    return o;
  }

  std::vector<EngineKind> engines() const {
    if (engine == "both") return {EngineKind::Eager, EngineKind::Lazy};
    return {engine == "eager" ? EngineKind::Eager : EngineKind::Lazy};
  }
};

const char* engine_name(EngineKind k) { return k == EngineKind::Eager ? "eager" : "lazy"; }
const char* set_name(ActiveSetKind k) { return k == ActiveSetKind::Gapless ? "gapless" : "chained"; }

json stats_json(const JoinStats& s) {
  return {{"getnext_count", s.getnext_count},
          {"comparison_count", s.comparison_count},
          {"output_count", s.output_count},
          {"buffer_flushes", s.buffer_flushes},
          {"endpoint_comparisons", s.endpoint_comparisons}};
}

json histogram_json(const SequenceHistogram& h) {
  json out = json::object();
  for (std::size_t i = 0; i < kHistogramBuckets; ++i) {
    const std::string key = i + 1 == kHistogramBuckets ? "10+" : std::to_string(i + 1);
    out[key] = h.percent(i);
  }
  return out;
}

void write_json(const std::string& path, const json& j, std::ostream& out) {
  if (path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << j.dump(2) << '\n';
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct TimedRun {
  std::vector<ResultPair> pairs;
  JoinStats stats;
  double wall_ms = 0;
};

TimedRun timed_join(const PredicateSpec& spec, const Relation& r, const Relation& s,
                    const EndpointIndex& ir, const EndpointIndex& is, const JoinOptions& o,
                    std::size_t k) {
  TimedRun run;
  const auto start = Clock::now();
  if (k <= 1) {
    auto res = run_join(spec, r, s, ir, is, o);
    run.pairs = std::move(res.pairs);
    run.stats = res.stats;
  } else {
    auto res = partitioned_join(spec, r, s, k, o);
    run.pairs = std::move(res.pairs);
    for (const auto& ps : res.partition_stats) run.stats += ps;
  }
  run.wall_ms = ms_since(start);
  return run;
}

/// Prints oracle-only pairs as "missing" and sweep-only pairs as "extra".
/// Returns the size of the symmetric difference.
std::size_t print_diff(const PairSet& expected, const PairSet& got, std::ostream& out,
                       std::size_t limit = 50) {
  PairSet missing, extra;
  std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                      std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                      std::back_inserter(extra));
  std::size_t shown = 0;
  for (const auto* side : {&missing, &extra}) {
    const char* label = side == &missing ? "missing" : "extra";
    for (const auto& [a, b] : *side) {
      if (shown++ < limit) out << "  " << label << " (" << a << "," << b << ")\n";
    }
  }
  if (shown > limit) out << "  ... " << shown - limit << " more\n";
  return missing.size() + extra.size();
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  DatasetSpec spec{1000, 0.1, 1'000'000, 1};
  std::string output = "-";
};

void cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto rel = gen_synthetic(a.spec);
  if (a.output == "-") {
    write_csv(out, rel);
  } else {
    write_csv(a.output, rel);
  }
}

// ---------------------------------------------------------------- join

struct JoinArgs {
  SpecArgs spec;
  EngineArgs engine;
  std::size_t k = 1;
  std::string r_path, s_path, output, stats_path;
};

void cmd_join(const JoinArgs& a, std::ostream& out) {
  const auto spec = a.spec.spec();
  const auto r = read_csv(a.r_path);
  const auto s = read_csv(a.s_path);
  const auto ir = build_endpoint_index(r);
  const auto is = build_endpoint_index(s);

  json blob{{"predicate", to_string(spec)},
            {"r", {{"path", a.r_path}, {"tuples", r.size()}}},
            {"s", {{"path", a.s_path}, {"tuples", s.size()}}},
            {"k", a.k},
            {"capacity", a.engine.capacity},
            {"runs", json::array()}};

  std::vector<TimedRun> runs;
  const auto engines = a.engine.engines();
  for (EngineKind kind : engines) {
    runs.push_back(timed_join(spec, r, s, ir, is, a.engine.options(kind), a.k));
  }
  const PairSet pairs = to_pair_set(runs.front().pairs);
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (to_pair_set(runs[i].pairs) != pairs) throw CheckFailed("engines disagree on the pair set");
  }

  out << to_string(spec) << "  |r|=" << r.size() << " |s|=" << s.size() << " k=" << a.k << '\n';
  out << std::left << std::setw(8) << "engine" << std::right << std::setw(12) << "pairs"
      << std::setw(14) << "getnext" << std::setw(14) << "comparisons" << std::setw(14)
      << "flushes" << std::setw(12) << "wall_ms" << std::setw(22) << "checksum" << '\n';
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    const auto sum = checksum(run.pairs, r, s);
    out << std::left << std::setw(8) << engine_name(engines[i]) << std::right << std::setw(12)
        << run.pairs.size() << std::setw(14) << run.stats.getnext_count << std::setw(14)
        << run.stats.comparison_count << std::setw(14) << run.stats.buffer_flushes
        << std::setw(12) << std::fixed << std::setprecision(2) << run.wall_ms << std::setw(22)
        << sum << '\n';
    blob["runs"].push_back({{"engine", engine_name(engines[i])},
                            {"wall_ms", run.wall_ms},
                            {"pairs", run.pairs.size()},
                            {"checksum", sum},
                            {"stats", stats_json(run.stats)}});
  }
  if (runs.size() == 2) {
    const double gnorf = compute_gnorf(runs[0].stats, runs[1].stats);
    out << "GNORF " << std::setprecision(4) << gnorf << '\n';
    blob["gnorf"] = gnorf;
  }

  if (!a.output.empty()) write_pairs_csv(a.output, pairs);
  if (!a.stats_path.empty()) write_json(a.stats_path, blob, out);
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  SpecArgs spec;
  EngineArgs engine;
  bool all = false;
  std::string pairs_path;
  std::string r_path, s_path;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::size_t max_n = 200;
  Timestamp domain = 100;
  std::size_t oracle_cap = 3000;
};

std::vector<PredicateSpec> every_spec(const std::vector<std::optional<Timestamp>>& offsets) {
  std::vector<PredicateSpec> out;
  const std::vector<std::optional<Timestamp>> none{std::nullopt};
  for (Predicate p : all_predicates()) {
    const auto& ds = accepts_delta(p) ? offsets : none;
    const auto& es = accepts_epsilon(p) ? offsets : none;
    for (bool strict : {false, true}) {
      if (strict && !accepts_strict(p)) continue;
      for (const auto& d : ds) {
        for (const auto& e : es) out.push_back({p, d, e, strict});
      }
    }
  }
  return out;
}

/// Returns true when the sweep matches the oracle; prints the diff otherwise.
bool verify_one(const PredicateSpec& spec, const Relation& r, const Relation& s,
                const EndpointIndex& ir, const EndpointIndex& is, const JoinOptions& o,
                std::ostream& out, const std::string& context) {
  const auto expected = oracle::nested_loop_join(spec, r, s);
  const auto got = to_pair_set(run_join(spec, r, s, ir, is, o).pairs);
  if (got == expected) return true;
  out << "MISMATCH " << to_string(spec) << context << '\n';
  print_diff(expected, got, out);
  return false;
}

void cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto opts = a.engine.options(a.engine.engines().front());
  if (a.random > 0) {
    const auto specs = a.all ? every_spec({std::nullopt, 0, 1, 3, 50})
                             : std::vector<PredicateSpec>{a.spec.spec()};
    SplitMix64 rng(a.seed);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < a.random; ++i) {
      auto make = [&] {
        Relation rel;
        const auto n = rng.next_in(0, static_cast<std::int64_t>(a.max_n));
        for (std::int64_t t = 0; t < n; ++t) {
          const auto ts = rng.next_in(0, a.domain - 1);
          rel.add(ts, rng.next_in(ts + 1, a.domain));
        }
        return rel;
      };
      const auto r = make();
      const auto s = make();
      const auto ir = build_endpoint_index(r);
      const auto is = build_endpoint_index(s);
      for (const auto& spec : specs) {
        if (!verify_one(spec, r, s, ir, is, opts, out, " instance " + std::to_string(i))) {
          ++failures;
        }
      }
    }
    out << a.random << " instances x " << specs.size() << " specs: " << failures
        << " mismatches\n";
    if (failures > 0) throw CheckFailed("sweep and oracle disagree");
    return;
  }

  if (a.r_path.empty() || a.s_path.empty()) throw UsageError("verify needs R and S files");
  const auto r = read_csv(a.r_path);
  const auto s = read_csv(a.s_path);
  if (r.size() > a.oracle_cap || s.size() > a.oracle_cap) {
    throw UsageError("input exceeds --oracle-cap " + std::to_string(a.oracle_cap) +
                     " tuples; refusing to run the nested-loop oracle");
  }

  if (!a.pairs_path.empty()) {
    const auto spec = a.spec.spec();
    const auto expected = oracle::nested_loop_join(spec, r, s);
    const auto got = read_pairs_csv(a.pairs_path);
    if (got == expected) {
      out << "OK " << to_string(spec) << " (" << got.size() << " pairs)\n";
      return;
    }
    out << "MISMATCH " << to_string(spec) << " vs " << a.pairs_path << '\n';
    const auto n = print_diff(expected, got, out);
    throw CheckFailed(std::to_string(n) + " pairs differ");
  }

  const auto ir = build_endpoint_index(r);
  const auto is = build_endpoint_index(s);
  const auto specs = a.all ? every_spec({std::nullopt, 0, 1, 3, 50})
                           : std::vector<PredicateSpec>{a.spec.spec()};
  std::size_t failures = 0;
  for (const auto& spec : specs) {
    if (!verify_one(spec, r, s, ir, is, opts, out, "")) ++failures;
  }
  out << specs.size() << " specs checked, " << failures << " mismatches\n";
  if (failures > 0) throw CheckFailed("sweep and oracle disagree");
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  SpecArgs spec;
  std::size_t capacity = kDefaultLazyCapacity;
  GenArgs gen;
  std::vector<std::uint64_t> grid;
  std::uint64_t batch = 0;
  std::uint64_t batch_active = 4;
  std::string r_path, s_path;
  int repeat = 1;
  std::string json_path;
};

struct Workload {
  std::string label;
  Relation r;
  Relation s;
};

json bench_workload(const Workload& w, const PredicateSpec& spec, const BenchArgs& a,
                    std::ostream& out) {
  const auto ir = build_endpoint_index(w.r);
  const auto is = build_endpoint_index(w.s);
  const auto hist = sequence_histogram(ir, is);

  out << "\n== " << w.label << "  " << to_string(spec) << "  |r|=" << w.r.size()
      << " |s|=" << w.s.size() << " capacity=" << a.capacity << '\n';
  out << std::left << std::setw(16) << "config" << std::right << std::setw(12) << "pairs"
      << std::setw(14) << "getnext" << std::setw(12) << "wall_ms" << std::setw(14)
      << "ns/getnext" << std::setw(22) << "checksum" << '\n';

  json report{{"workload", w.label},
              {"predicate", to_string(spec)},
              {"r_tuples", w.r.size()},
              {"s_tuples", w.s.size()},
              {"capacity", a.capacity},
              {"histogram_percent", histogram_json(hist)},
              {"configs", json::array()}};

  std::optional<std::uint64_t> reference_sum;
  std::optional<std::size_t> reference_count;
  JoinStats eager_stats, lazy_stats;
  for (ActiveSetKind set : {ActiveSetKind::Gapless, ActiveSetKind::Chained}) {
    for (EngineKind engine : {EngineKind::Eager, EngineKind::Lazy}) {
      JoinOptions o;
      o.engine = engine;
      o.active_set = set;
      o.capacity = a.capacity;
      TimedRun best;
      for (int rep = 0; rep < std::max(1, a.repeat); ++rep) {
        auto run = timed_join(spec, w.r, w.s, ir, is, o, 1);
        if (rep == 0 || run.wall_ms < best.wall_ms) best = std::move(run);
      }
      const auto sum = checksum(best.pairs, w.r, w.s);
      if (!reference_sum) {
        reference_sum = sum;
        reference_count = best.pairs.size();
      } else if (*reference_sum != sum || *reference_count != best.pairs.size()) {
        throw CheckFailed("checksum differs between configurations");
      }
      if (set == ActiveSetKind::Gapless) (engine == EngineKind::Eager ? eager_stats : lazy_stats) = best.stats;
      const std::string label = std::string(engine_name(engine)) + "/" + set_name(set);
      const double per_getnext =
          best.stats.getnext_count ? best.wall_ms * 1e6 / best.stats.getnext_count : 0.0;
      out << std::left << std::setw(16) << label << std::right << std::setw(12)
          << best.pairs.size() << std::setw(14) << best.stats.getnext_count << std::setw(12)
          << std::fixed << std::setprecision(2) << best.wall_ms << std::setw(14) << per_getnext
          << std::setw(22) << sum << '\n';
      report["configs"].push_back({{"engine", engine_name(engine)},
                                   {"active_set", set_name(set)},
                                   {"wall_ms", best.wall_ms},
                                   {"checksum", sum},
                                   {"pairs", best.pairs.size()},
                                   {"stats", stats_json(best.stats)}});
    }
  }
  const double gnorf = compute_gnorf(eager_stats, lazy_stats);
  report["gnorf"] = gnorf;
  out << "checksums agree; GNORF " << std::setprecision(4) << gnorf << '\n';
  out << "sequence lengths %:";
  for (std::size_t i = 0; i < kHistogramBuckets; ++i) {
    out << ' ' << (i + 1 == kHistogramBuckets ? "10+" : std::to_string(i + 1)) << '='
        << std::setprecision(1) << hist.percent(i);
  }
  out << '\n';
  return report;
}

void cmd_bench(const BenchArgs& a, std::ostream& out) {
  const auto spec = a.spec.spec();
  std::vector<Workload> workloads;
  if (!a.r_path.empty()) {
    if (a.s_path.empty()) throw UsageError("bench with files needs both R and S");
    workloads.push_back({"files", read_csv(a.r_path), read_csv(a.s_path)});
  } else if (a.batch > 0) {
    auto b = gen_batch(a.batch, a.batch_active);
    workloads.push_back({"batch m=" + std::to_string(a.batch) +
                             " a=" + std::to_string(a.batch_active),
                         std::move(b.r), std::move(b.s)});
  } else {
    const auto base = a.gen.spec;
    std::vector<std::uint64_t> sizes = a.grid.empty() ? std::vector{base.n} : a.grid;
    for (auto n : sizes) {
      DatasetSpec ds = base;
      ds.n = n;
      // Keep the density n / domain fixed across the grid.
      if (!a.grid.empty() && base.n > 0) {
        ds.domain_hi = std::max<Timestamp>(
            1, static_cast<Timestamp>(static_cast<double>(base.domain_hi) *
                                      static_cast<double>(n) / static_cast<double>(base.n)));
      }
      auto rel = gen_synthetic(ds);
      workloads.push_back({"synthetic self-join n=" + std::to_string(n) +
                               " domain=" + std::to_string(ds.domain_hi),
                           rel, rel});
    }
  }
  json reports = json::array();
  for (const auto& w : workloads) reports.push_back(bench_workload(w, spec, a, out));
  if (!a.json_path.empty()) write_json(a.json_path, reports, out);
}

// ---------------------------------------------------------------- index / hist

void cmd_index(const std::string& path, const std::string& output, std::ostream& out) {
  const auto idx = build_endpoint_index(read_csv(path));
  if (output.empty() || output == "-") {
    write_endpoints_csv(out, idx);
    return;
  }
  std::ofstream f(output);
  if (!f) throw std::runtime_error("cannot open '" + output + "' for writing");
  write_endpoints_csv(f, idx);
}

void cmd_hist(const std::string& r_path, const std::string& s_path, std::ostream& out) {
  const auto h = sequence_histogram(build_endpoint_index(read_csv(r_path)),
                                    build_endpoint_index(read_csv(s_path)));
  out << "length  runs  percent\n";
  for (std::size_t i = 0; i < kHistogramBuckets; ++i) {
    out << std::left << std::setw(8) << (i + 1 == kHistogramBuckets ? "10+" : std::to_string(i + 1))
        << std::right << std::setw(4) << h.runs[i] << "  " << std::fixed << std::setprecision(2)
        << h.percent(i) << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane-sweeping interval joins over CSV relations", "ijoin"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic relation");
  gen_cmd->add_option("--n", gen.spec.n, "Tuple count");
  gen_cmd->add_option("--lambda", gen.spec.lambda, "Exponential rate of durations")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--domain-hi", gen.spec.domain_hi, "Largest start timestamp")
      ->check(CLI::Range(Timestamp{1}, kInfinity / 2));
  gen_cmd->add_option("--seed", gen.spec.seed, "SplitMix64 seed");
  gen_cmd->add_option("-o,--output", gen.output, "Output CSV ('-' for stdout)");

  JoinArgs join;
  auto* join_cmd = app.add_subcommand("join", "Join two relations");
  join.spec.attach(*join_cmd);
  join.engine.attach(*join_cmd, true);
  join_cmd->add_option("--k", join.k, "Partition count")->check(CLI::PositiveNumber);
  join_cmd->add_option("-o,--output", join.output, "Pairs CSV");
  join_cmd->add_option("--stats", join.stats_path, "JSON stats file ('-' for stdout)");
  join_cmd->add_option("r", join.r_path, "R tuples CSV")->required()->check(CLI::ExistingFile);
  join_cmd->add_option("s", join.s_path, "S tuples CSV")->required()->check(CLI::ExistingFile);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check sweep results against the oracle");
  verify.spec.attach(*verify_cmd);
  verify.engine.attach(*verify_cmd, false);
  verify_cmd->add_flag("--all", verify.all, "Every relation over offsets {none,0,1,3,50}");
  verify_cmd->add_option("--pairs", verify.pairs_path, "Check this pairs CSV instead")
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--random", verify.random, "Number of random instances");
  verify_cmd->add_option("--seed", verify.seed, "Seed for --random");
  verify_cmd->add_option("--max-n", verify.max_n, "Largest random relation");
  verify_cmd->add_option("--domain", verify.domain, "Random timestamps lie in [0, domain]")
      ->check(CLI::Range(Timestamp{1}, Timestamp{1} << 40));
  verify_cmd->add_option("--oracle-cap", verify.oracle_cap, "Largest input for the oracle");
  verify_cmd->add_option("r", verify.r_path, "R tuples CSV")->check(CLI::ExistingFile);
  verify_cmd->add_option("s", verify.s_path, "S tuples CSV")->check(CLI::ExistingFile);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare engines and active sets");
  bench.spec.attach(*bench_cmd);
  bench_cmd->add_option("--capacity", bench.capacity, "Lazy buffer capacity")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--n", bench.gen.spec.n, "Synthetic tuple count");
  bench_cmd->add_option("--lambda", bench.gen.spec.lambda, "Exponential rate of durations")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--domain-hi", bench.gen.spec.domain_hi, "Largest start timestamp")
      ->check(CLI::Range(Timestamp{1}, kInfinity / 2));
  bench_cmd->add_option("--seed", bench.gen.spec.seed, "SplitMix64 seed");
  bench_cmd->add_option("--grid", bench.grid, "Sizes to sweep at the density of --n/--domain-hi")
      ->delimiter(',');
  bench_cmd->add_option("--batch", bench.batch, "Clustered workload: S tuples sharing a start");
  bench_cmd->add_option("--batch-active", bench.batch_active, "R tuples covering the batch");
  bench_cmd->add_option("--repeat", bench.repeat, "Runs per configuration (best is kept)");
  bench_cmd->add_option("--json", bench.json_path, "Report file ('-' for stdout)");
  bench_cmd->add_option("r", bench.r_path, "R tuples CSV")->check(CLI::ExistingFile);
  bench_cmd->add_option("s", bench.s_path, "S tuples CSV")->check(CLI::ExistingFile);

  std::string index_in, index_out;
  auto* index_cmd = app.add_subcommand("index", "Dump the endpoint index of a relation");
  index_cmd->add_option("relation", index_in, "Tuples CSV")->required()->check(CLI::ExistingFile);
  index_cmd->add_option("-o,--output", index_out, "Output CSV");

  std::string hist_r, hist_s;
  auto* hist_cmd = app.add_subcommand("hist", "Histogram of uninterrupted endpoint runs");
  hist_cmd->add_option("r", hist_r, "R tuples CSV")->required()->check(CLI::ExistingFile);
  hist_cmd->add_option("s", hist_s, "S tuples CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) cmd_gen(gen, out);
    if (*join_cmd) cmd_join(join, out);
    if (*verify_cmd) cmd_verify(verify, out);
    if (*bench_cmd) cmd_bench(bench, out);
    if (*index_cmd) cmd_index(index_in, index_out, out);
    if (*hist_cmd) cmd_hist(hist_r, hist_s, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ijoin::cli
