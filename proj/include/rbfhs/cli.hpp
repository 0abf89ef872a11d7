#pragma once

// Command implementations behind the rbfhs executable. Each takes parsed
// options plus streams and returns a process exit code.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rbfhs/bench.hpp"
#include "rbfhs/io.hpp"
#include "rbfhs/oracle.hpp"
#include "rbfhs/search.hpp"
#include "rbfhs/sequential.hpp"

namespace rbfhs::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    auto t = rbfhs::detail::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string dpi_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

}  // namespace detail

struct DiagOptions {
  std::string dpi;
  std::string algo = "rbfhs";
  std::string mode = "card";
  std::size_t ld = 10;
  std::string trace;
  std::string csv;
};

inline int cmd_diag(const DiagOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.ld == 0) throw Error("--ld must be at least 1");
    Algorithm algo = parse_algorithm(o.algo);
    LoadedDpi loaded = load_dpi_file(o.dpi);
    FaultProbabilities pr = probabilities_for(loaded, parse_mode(o.mode));

    SearchOptions options;
    std::ofstream trace_file;
    if (!o.trace.empty()) {
      trace_file = detail::open_output(o.trace);
      options.trace = [&](const TraceEvent& e) { trace_file << format_trace(e, loaded.dpi) << "\n"; };
    }
    SearchResult r = search(algo, loaded.dpi, pr, o.ld, options);

    std::vector<double> normalized = normalized_probabilities(r.diagnoses);
    for (std::size_t i = 0; i < r.diagnoses.size(); ++i) {
      const Diagnosis& d = r.diagnoses[i];
      out << i + 1 << " " << loaded.dpi.describe(d.ids) << " pr=" << d.probability()
          << " normalized=" << detail::fixed(normalized[i], 4) << "\n";
    }
    if (r.diagnoses.empty()) out << "no diagnosis\n";

    if (!o.csv.empty()) {
      std::ofstream csv = detail::open_output(o.csv);
      BenchRow row{detail::dpi_name(o.dpi), to_string(algo), o.ld, 0, r.stats.wall_time_ms,
                   r.stats.peak_live_nodes, r.stats.nodes_generated, r.stats.label_calls,
                   r.stats.conflict_computations, r.stats.conflict_reuses, r.diagnoses.size()};
      write_bench_header(csv);
      write_bench_row(csv, row);
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

struct SequentialOptions {
  std::string dpi;
  std::string algo = "rbfhs";
  std::string mode = "card";
  std::size_t ld = 2;
  std::string actual;
  std::size_t sessions = 1;
  std::uint64_t seed = 1;
  std::string oracle = "simulated";
  std::string trace;
  std::string csv;
};

// One JSON object per iteration; runtimes are left out so that traces of
// equal runs compare equal.
inline nlohmann::json iteration_record(const Dpi& dpi, std::size_t session, std::size_t index,
                                       const SessionIteration& it) {
  nlohmann::json diagnoses = nlohmann::json::array();
  for (const Diagnosis& d : it.diagnoses) {
    nlohmann::json ids = nlohmann::json::array();
    for (AxiomIndex a : d.ids) ids.push_back(dpi.id(a));
    diagnoses.push_back(std::move(ids));
  }
  nlohmann::json rec{{"session", session}, {"iteration", index}, {"diagnoses", std::move(diagnoses)}};
  if (it.query) {
    rec["query"] = dpi.id(it.query->axiom);
    rec["answer"] = it.answer;
  } else {
    rec["query"] = nullptr;
    rec["answer"] = nullptr;
  }
  rec["stats"] = {{"peak_live_nodes", it.stats.peak_live_nodes},
                  {"nodes_generated", it.stats.nodes_generated},
                  {"label_calls", it.stats.label_calls},
                  {"conflict_computations", it.stats.conflict_computations},
                  {"conflict_reuses", it.stats.conflict_reuses},
                  {"validity_checks", it.stats.validity_checks},
                  {"backtracks", it.stats.backtracks}};
  return rec;
}

// Asks a human through `in`/`out`; accepts y/yes/n/no.
inline AnswerSource interactive_oracle(std::istream& in, std::ostream& out) {
  return [&in, &out](const Dpi& dpi, Query q) {
    for (;;) {
      out << "Is " << dpi.id(q.axiom) << " correct? " << dpi.sentence_text(q.axiom) << " [y/n] " << std::flush;
      std::string line;
      if (!std::getline(in, line)) throw Error("no answer on standard input");
      std::string a(rbfhs::detail::trim(line));
      if (a == "y" || a == "yes") return true;
      if (a == "n" || a == "no") return false;
      out << "please answer y or n\n";
    }
  };
}

inline int cmd_sequential(const SequentialOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (o.ld < 2) throw Error("--ld must be at least 2 for sequential diagnosis");
    if (o.oracle != "simulated" && o.oracle != "interactive") {
      throw Error("unknown oracle '" + o.oracle + "' (expected simulated or interactive)");
    }
    Algorithm algo = parse_algorithm(o.algo);
    LoadedDpi loaded = load_dpi_file(o.dpi);
    const Dpi& dpi = loaded.dpi;
    FaultProbabilities pr = probabilities_for(loaded, parse_mode(o.mode));

    const bool interactive = o.oracle == "interactive";
    std::vector<std::optional<IdSet>> actuals;
    if (!o.actual.empty()) {
      IdSet actual = dpi.resolve(detail::split_list(o.actual));
      if (!dpi.is_minimal_diagnosis(actual)) throw Error(dpi.describe(actual) + " is not a minimal diagnosis");
      actuals.assign(o.sessions, actual);
    } else if (interactive) {
      actuals.assign(o.sessions, std::nullopt);
    } else {
      for (auto& a : sample_actuals(dpi, pr, o.sessions, o.seed)) actuals.emplace_back(std::move(a));
    }

    std::ofstream trace_file, csv_file;
    if (!o.trace.empty()) trace_file = detail::open_output(o.trace);
    if (!o.csv.empty()) {
      csv_file = detail::open_output(o.csv);
      write_bench_header(csv_file);
    }
    auto write_trace = [&](std::size_t session, const SessionTrace& t) {
      if (!trace_file.is_open()) return;
      for (std::size_t i = 0; i < t.iterations.size(); ++i) {
        trace_file << iteration_record(dpi, session, i, t.iterations[i]).dump() << "\n";
      }
    };

    SessionOptions options;
    options.algorithm = algo;
    options.ld = o.ld;
    AnswerSource human = interactive_oracle(in, out);
    for (std::size_t s = 0; s < actuals.size(); ++s) {
      const auto& actual = actuals[s];
      AnswerSource answer = interactive ? human : AnswerSource([&actual](const Dpi&, Query q) {
        return oracle_answer(q, *actual);
      });
      SessionTrace t;
      try {
        t = run_session(dpi, pr, answer, options);
      } catch (const SessionError& e) {
        write_trace(s, e.partial());
        err << "session " << s << ": " << e.what() << " after " << e.partial().queries() << " queries\n";
        return kFailure;
      }
      write_trace(s, t);
      if (csv_file.is_open()) write_bench_row(csv_file, summarize_session(t, detail::dpi_name(o.dpi), algo, o.ld, s));
      out << "session " << s;
      if (actual) out << " actual=" << dpi.describe(*actual);
      out << " queries=" << t.queries() << " final=" << dpi.describe(t.final_diagnosis) << "\n";
      if (actual && t.final_diagnosis != *actual) {
        err << "session " << s << ": isolated " << dpi.describe(t.final_diagnosis) << " instead of the actual diagnosis\n";
        return kFailure;
      }
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

struct BenchOptions {
  std::string dir;
  std::string ld = "2,6,10,20";
  std::size_t sessions = 5;
  std::uint64_t seed = 1;
  std::string mode = "card";
  std::string out;
  std::string plot;
};

inline int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  try {
    BenchConfig config;
    config.lds.clear();
    for (const auto& s : detail::split_list(o.ld)) {
      std::size_t v = 0;
      if (!rbfhs::detail::parse_uint(s, v) || v < 2) throw Error("ld values must be integers >= 2, got '" + s + "'");
      config.lds.push_back(v);
    }
    if (config.lds.empty()) throw Error("empty --ld list");
    config.sessions = o.sessions;
    config.seed = o.seed;
    config.mode = parse_mode(o.mode);

    std::vector<NamedDpi> instances;
    std::vector<BenchFailure> load_failures;
    for (const auto& path : list_dpi_files(o.dir)) {
      try {
        instances.push_back({path.stem().string(), load_dpi_file(path.string())});
      } catch (const std::exception& e) {
        load_failures.push_back({path.stem().string(), "*", 0, 0, e.what()});
      }
    }
    BenchReport report = run_bench(instances, config);
    report.failures.insert(report.failures.begin(), load_failures.begin(), load_failures.end());

    const std::string csv = format_bench_csv(report.rows);
    if (o.out.empty()) {
      out << csv;
    } else {
      detail::open_output(o.out) << csv;
    }
    std::vector<FactorRow> factors = compute_factors(report.rows);
    if (!o.plot.empty()) detail::open_output(o.plot) << format_factors_csv(factors);
    for (const auto& f : factors) {
      err << "summary " << f.dpi << " ld=" << f.ld << " memory_factor=" << detail::fixed(f.memory_factor, 3)
          << " time_factor=" << detail::fixed(f.time_factor, 3) << "\n";
    }
    for (const auto& f : report.failures) {
      err << "failed " << f.dpi << " " << f.algo << " ld=" << f.ld << " session=" << f.session << ": " << f.message
          << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

struct CheckOptions {
  std::string dpi;
  std::string mode = "card";
};

// Cross-checks both searches against the brute-force oracles.
inline int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  try {
    LoadedDpi loaded = load_dpi_file(o.dpi);
    const Dpi& dpi = loaded.dpi;
    FaultProbabilities pr = probabilities_for(loaded, parse_mode(o.mode));
    if (dpi.size() > kBruteForceLimit) throw Error("check needs at most 20 axioms");

    int failures = 0;
    auto report = [&](bool ok, const std::string& what) {
      out << (ok ? "PASS " : "FAIL ") << what << "\n";
      failures += !ok;
    };
    auto as_sets = [](const std::vector<Diagnosis>& ds) {
      std::vector<IdSet> out;
      for (const auto& d : ds) out.push_back(d.ids);
      std::sort(out.begin(), out.end());
      return out;
    };

    std::vector<Diagnosis> oracle = brute_force_min_diagnoses(dpi, pr);
    std::vector<Conflict> conflicts = brute_force_min_conflicts(dpi);
    const std::vector<IdSet> expected = as_sets(oracle);

    for (Algorithm algo : {Algorithm::rbfhs, Algorithm::hstree}) {
      const std::string name = to_string(algo);
      SearchResult r = search(algo, dpi, pr, kAllDiagnoses);
      report(as_sets(r.diagnoses) == expected, name + " finds exactly the minimal diagnoses");
      bool ordered = true;
      for (std::size_t i = 1; i < r.diagnoses.size(); ++i) {
        ordered = ordered && !(r.diagnoses[i].log_probability > r.diagnoses[i - 1].log_probability);
      }
      report(ordered, name + " emits diagnoses best-first");
      bool minimal_conflicts = true;
      for (const Conflict& c : r.conflicts) {
        minimal_conflicts = minimal_conflicts && std::find(conflicts.begin(), conflicts.end(), c) != conflicts.end();
      }
      report(minimal_conflicts, name + " computes only minimal conflicts");
    }

    std::vector<IdSet> hitting = brute_force_min_hitting_sets(dpi.size(), conflicts);
    std::sort(hitting.begin(), hitting.end());
    report(hitting == expected, "minimal diagnoses are the minimal hitting sets of the minimal conflicts");

    std::vector<IdSet> dual = brute_force_min_hitting_sets(dpi.size(), expected);
    std::vector<IdSet> sorted_conflicts = conflicts;
    std::sort(dual.begin(), dual.end());
    std::sort(sorted_conflicts.begin(), sorted_conflicts.end());
    report(dual == sorted_conflicts, "minimal conflicts are the minimal hitting sets of the minimal diagnoses");

    double total = 0.0;
    for (double v : normalized_probabilities(oracle)) total += v;
    report(oracle.empty() || std::abs(total - 1.0) < 1e-9, "normalized probabilities sum to one");

    out << (failures ? "check failed\n" : "check passed\n");
    return failures ? kFailure : kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

struct GenOptions {
  std::string out;
  std::size_t count = 10;
  std::size_t components = 12;
  std::size_t conflicts = 6;
  std::size_t max_size = 3;
  std::size_t min_size = 1;
  std::uint64_t seed = 1;
  std::string prefix = "gen";
};

inline int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  try {
    std::filesystem::create_directories(o.out);
    for (std::size_t i = 0; i < o.count; ++i) {
      const std::uint64_t seed = o.seed + i;
      Dpi dpi = gen_random_dpi(o.components, o.conflicts, o.max_size, seed, o.min_size);
      FaultProbabilities pr = gen_random_pr(o.components, seed);
      char name[64];
      std::snprintf(name, sizeof name, "%s_%03zu.dpi", o.prefix.c_str(), i);
      const auto path = std::filesystem::path(o.out) / name;
      detail::open_output(path.string()) << "# seed " << seed << "\n" << format_dpi(dpi, pr);
      out << path.string() << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace rbfhs::cli
