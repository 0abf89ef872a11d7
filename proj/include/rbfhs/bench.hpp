#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rbfhs/io.hpp"
#include "rbfhs/oracle.hpp"
#include "rbfhs/search.hpp"
#include "rbfhs/sequential.hpp"

namespace rbfhs {

inline constexpr double kCardinalityConstant = 1.0 / 3.0;
inline constexpr double kAdjustConstant = 0.25;

enum class PrMode { card, prob };

inline PrMode parse_mode(const std::string& s) {
  if (s == "card") return PrMode::card;
  if (s == "prob") return PrMode::prob;
  throw Error("unknown mode '" + s + "' (expected card or prob)");
}

// Cost-adjusted probabilities for a loaded instance. File values declared as
// adjusted are taken unchanged.
inline FaultProbabilities probabilities_for(const LoadedDpi& loaded, PrMode mode) {
  if (mode == PrMode::card) return cardinality_pr(loaded.dpi.size(), kCardinalityConstant);
  if (!loaded.pr) throw Error("prob mode needs a [PR] section");
  if (loaded.pr->cost_adjusted) return *loaded.pr;
  return cost_adjust(*loaded.pr, kAdjustConstant);
}

// One sequential session of one algorithm, aggregated over its searches.
struct BenchRow {
  std::string dpi;
  std::string algo;
  std::size_t ld = 0;
  std::size_t session = 0;
  double runtime_ms = 0.0;
  std::uint64_t peak_live_nodes = 0;
  std::uint64_t nodes_generated = 0;
  std::uint64_t label_calls = 0;
  std::uint64_t conflict_computations = 0;
  std::uint64_t conflict_reuses = 0;
  std::uint64_t diagnoses_found = 0;

  bool operator==(const BenchRow&) const = default;
};

inline constexpr const char* kBenchHeader =
    "dpi,algo,ld,session,runtime_ms,peak_live_nodes,nodes_generated,label_calls,conflict_computations,"
    "conflict_reuses,diagnoses_found";

namespace detail {

inline std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, end);
}

template <typename T>
T parse_field(const std::string& s, const char* name) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(std::string("malformed CSV field ") + name + ": '" + s + "'");
  return v;
}

}  // namespace detail

inline void write_bench_header(std::ostream& out) { out << kBenchHeader << "\n"; }

inline void write_bench_row(std::ostream& out, const BenchRow& r) {
  for (const std::string* s : {&r.dpi, &r.algo}) {
    if (s->find_first_of(",\"\n") != std::string::npos) throw Error("CSV field needs no quoting: '" + *s + "'");
  }
  out << r.dpi << ',' << r.algo << ',' << r.ld << ',' << r.session << ',' << detail::shortest(r.runtime_ms) << ','
      << r.peak_live_nodes << ',' << r.nodes_generated << ',' << r.label_calls << ',' << r.conflict_computations
      << ',' << r.conflict_reuses << ',' << r.diagnoses_found << "\n";
}

inline std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  write_bench_header(out);
  for (const auto& r : rows) write_bench_row(out, r);
  return out.str();
}

inline std::vector<BenchRow> parse_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchHeader) throw Error("missing or unexpected CSV header");
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 11) throw Error("CSV row has " + std::to_string(f.size()) + " fields: " + line);
    BenchRow r;
    r.dpi = f[0];
    r.algo = f[1];
    r.ld = detail::parse_field<std::size_t>(f[2], "ld");
    r.session = detail::parse_field<std::size_t>(f[3], "session");
    r.runtime_ms = detail::parse_field<double>(f[4], "runtime_ms");
    r.peak_live_nodes = detail::parse_field<std::uint64_t>(f[5], "peak_live_nodes");
    r.nodes_generated = detail::parse_field<std::uint64_t>(f[6], "nodes_generated");
    r.label_calls = detail::parse_field<std::uint64_t>(f[7], "label_calls");
    r.conflict_computations = detail::parse_field<std::uint64_t>(f[8], "conflict_computations");
    r.conflict_reuses = detail::parse_field<std::uint64_t>(f[9], "conflict_reuses");
    r.diagnoses_found = detail::parse_field<std::uint64_t>(f[10], "diagnoses_found");
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<BenchRow> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_bench_csv(in);
}

inline BenchRow summarize_session(const SessionTrace& trace, std::string dpi, Algorithm algo, std::size_t ld,
                                  std::size_t session) {
  BenchRow r{std::move(dpi), to_string(algo), ld, session};
  for (const auto& it : trace.iterations) {
    r.runtime_ms += it.stats.wall_time_ms;
    r.peak_live_nodes = std::max(r.peak_live_nodes, it.stats.peak_live_nodes);
    r.nodes_generated += it.stats.nodes_generated;
    r.label_calls += it.stats.label_calls;
    r.conflict_computations += it.stats.conflict_computations;
    r.conflict_reuses += it.stats.conflict_reuses;
  }
  if (!trace.iterations.empty()) r.diagnoses_found = trace.iterations.front().diagnoses.size();
  return r;
}

// Pool of actual diagnoses that sessions are sampled from: every minimal
// diagnosis for small instances, the leading ones otherwise.
inline constexpr std::size_t kBruteForceSampleLimit = 12;
inline constexpr std::size_t kSamplePool = 20;

inline std::vector<IdSet> actual_pool(const Dpi& dpi, const FaultProbabilities& pr) {
  std::vector<IdSet> out;
  if (dpi.size() <= kBruteForceSampleLimit) {
    for (auto& d : brute_force_min_diagnoses(dpi, pr)) out.push_back(std::move(d.ids));
  } else {
    for (auto& d : rbf_hs(dpi, pr, kSamplePool).diagnoses) out.push_back(std::move(d.ids));
  }
  return out;
}

inline std::vector<IdSet> sample_actuals(const Dpi& dpi, const FaultProbabilities& pr, std::size_t sessions,
                                         std::uint64_t seed) {
  std::vector<IdSet> pool = actual_pool(dpi, pr);
  if (pool.empty()) throw Error("instance has no minimal diagnosis to sample");
  SeededRng rng(seed);
  std::vector<IdSet> out;
  for (std::size_t s = 0; s < sessions; ++s) out.push_back(pool[rng.between(0, pool.size() - 1)]);
  return out;
}

struct BenchConfig {
  std::vector<std::size_t> lds{2, 6, 10, 20};
  std::size_t sessions = 5;
  std::uint64_t seed = 1;
  PrMode mode = PrMode::card;
};

struct BenchFailure {
  std::string dpi;
  std::string algo;
  std::size_t ld;
  std::size_t session;
  std::string message;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchFailure> failures;
};

struct NamedDpi {
  std::string name;
  LoadedDpi loaded;
};

// Full factorial {dpi} x {rbfhs, hstree} x lds x sessions, run in a fixed
// order. Both algorithms see the same sampled actual diagnoses.
inline BenchReport run_bench(const std::vector<NamedDpi>& instances, const BenchConfig& config) {
  BenchReport report;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const auto& [name, loaded] = instances[k];
    std::vector<IdSet> actuals;
    FaultProbabilities pr;
    try {
      pr = probabilities_for(loaded, config.mode);
      actuals = sample_actuals(loaded.dpi, pr, config.sessions, config.seed + k);
    } catch (const std::exception& e) {
      report.failures.push_back({name, "*", 0, 0, e.what()});
      continue;
    }
    for (std::size_t ld : config.lds) {
      for (Algorithm algo : {Algorithm::rbfhs, Algorithm::hstree}) {
        for (std::size_t s = 0; s < actuals.size(); ++s) {
          try {
            SessionOptions options;
            options.algorithm = algo;
            options.ld = ld;
            SessionTrace trace = run_session(loaded.dpi, pr, actuals[s], options);
            report.rows.push_back(summarize_session(trace, name, algo, ld, s));
          } catch (const std::exception& e) {
            report.failures.push_back({name, to_string(algo), ld, s, e.what()});
          }
        }
      }
    }
  }
  return report;
}

// Plot data: per (dpi, ld), the session means of peak(hstree)/peak(rbfhs)
// and runtime(rbfhs)/runtime(hstree). Sessions missing either arm, or with a
// zero denominator, are left out of the respective mean.
struct FactorRow {
  std::string dpi;
  std::size_t ld = 0;
  double memory_factor = 0.0;
  double time_factor = 0.0;
  std::size_t memory_sessions = 0;
  std::size_t time_sessions = 0;
};

inline std::vector<FactorRow> compute_factors(const std::vector<BenchRow>& rows) {
  using Key = std::tuple<std::string, std::size_t, std::size_t>;
  std::map<Key, const BenchRow*> rbf, hst;
  std::vector<std::pair<std::string, std::size_t>> order;
  for (const auto& r : rows) {
    Key key{r.dpi, r.ld, r.session};
    (r.algo == "rbfhs" ? rbf : hst)[key] = &r;
    std::pair<std::string, std::size_t> cell{r.dpi, r.ld};
    if (std::find(order.begin(), order.end(), cell) == order.end()) order.push_back(cell);
  }
  std::vector<FactorRow> out;
  for (const auto& [dpi, ld] : order) {
    FactorRow f{dpi, ld};
    double mem = 0.0, time = 0.0;
    for (const auto& [key, r] : rbf) {
      if (std::get<0>(key) != dpi || std::get<1>(key) != ld) continue;
      auto h = hst.find(key);
      if (h == hst.end()) continue;
      if (r->peak_live_nodes > 0) {
        mem += static_cast<double>(h->second->peak_live_nodes) / static_cast<double>(r->peak_live_nodes);
        ++f.memory_sessions;
      }
      if (h->second->runtime_ms > 0.0) {
        time += r->runtime_ms / h->second->runtime_ms;
        ++f.time_sessions;
      }
    }
    if (f.memory_sessions == 0 && f.time_sessions == 0) continue;
    f.memory_factor = f.memory_sessions ? mem / static_cast<double>(f.memory_sessions) : 0.0;
    f.time_factor = f.time_sessions ? time / static_cast<double>(f.time_sessions) : 0.0;
    out.push_back(std::move(f));
  }
  return out;
}

inline std::string format_factors_csv(const std::vector<FactorRow>& factors) {
  std::ostringstream out;
  out << "dpi,ld,memory_factor,time_factor\n";
  for (const auto& f : factors) {
    out << f.dpi << ',' << f.ld << ',' << detail::shortest(f.memory_factor) << ','
        << detail::shortest(f.time_factor) << "\n";
  }
  return out.str();
}

// *.dpi files of a directory in name order.
inline std::vector<std::filesystem::path> list_dpi_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a directory: '" + dir.string() + "'");
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".dpi") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rbfhs
