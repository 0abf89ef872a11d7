#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rbfhs/dpi.hpp"
#include "rbfhs/search.hpp"

namespace rbfhs {

// Single-axiom measurement: "is axiom q correct?"
struct Query {
  AxiomIndex axiom;
};

struct QueryPartition {
  std::vector<Diagnosis> plus;   // predict a positive answer
  std::vector<Diagnosis> minus;  // predict a negative answer
  std::vector<Diagnosis> zero;   // predict neither

  // Each outcome eliminates at least one diagnosis.
  bool admissible() const { return !plus.empty() && !minus.empty(); }
};

inline QueryPartition partition(const Dpi& dpi, std::span<const Diagnosis> diagnoses, Query q) {
  if (diagnoses.empty()) throw Error("partition needs at least one diagnosis");
  QueryPartition out;
  const IdSet all = dpi.all();
  for (const Diagnosis& d : diagnoses) {
    IdSet kept = all.minus(d.ids);
    if (dpi.entails_axiom(kept, q.axiom)) {
      out.plus.push_back(d);
    } else if (!dpi.is_valid_set(kept, q.axiom)) {
      out.minus.push_back(d);
    } else {
      out.zero.push_back(d);
    }
  }
  return out;
}

struct ScoredQuery {
  Query query;
  double score;  // |p(plus) + p(zero)/2 - 1/2|
  QueryPartition cells;
};

// Entropy-style selection: the admissible query whose predicted positive
// mass (zero-cell mass split evenly) is closest to one half. Ties go to the
// smaller zero cell, then to the lowest axiom position.
inline ScoredQuery ent_select(const Dpi& dpi, std::span<const Diagnosis> diagnoses) {
  if (diagnoses.size() < 2) throw Error("query selection needs at least two diagnoses");
  std::vector<double> mass = normalized_probabilities(diagnoses);
  auto mass_of = [&](const std::vector<Diagnosis>& cell) {
    double m = 0.0;
    for (const Diagnosis& d : cell) {
      for (std::size_t i = 0; i < diagnoses.size(); ++i) {
        if (diagnoses[i].ids == d.ids) {
          m += mass[i];
          break;
        }
      }
    }
    return m;
  };

  IdSet in_any = diagnoses.front().ids;
  IdSet in_all = diagnoses.front().ids;
  for (const Diagnosis& d : diagnoses.subspan(1)) {
    in_any = in_any.united(d.ids);
    in_all = in_all.intersected(d.ids);
  }

  constexpr double kTieTolerance = 1e-12;
  std::optional<ScoredQuery> best;
  for (AxiomIndex a : in_any.minus(in_all)) {
    QueryPartition cells = partition(dpi, diagnoses, Query{a});
    if (!cells.admissible()) continue;
    double score = std::abs(mass_of(cells.plus) + 0.5 * mass_of(cells.zero) - 0.5);
    if (!best || score < best->score - kTieTolerance ||
        (std::abs(score - best->score) <= kTieTolerance && cells.zero.size() < best->cells.zero.size())) {
      best = ScoredQuery{Query{a}, score, std::move(cells)};
    }
  }
  if (!best) throw Error("no admissible single-axiom query discriminates the current diagnoses");
  return std::move(*best);
}

// Simulated oracle: the axiom is correct iff it is not in the actual diagnosis.
inline bool oracle_answer(Query q, const IdSet& actual) { return !actual.contains(q.axiom); }

inline Dpi update_dpi(const Dpi& dpi, Query q, bool answer) {
  return answer ? dpi.with_positive(q.axiom) : dpi.with_negative(q.axiom);
}

struct SessionIteration {
  std::vector<Diagnosis> diagnoses;
  std::optional<Query> query;  // absent on the final iteration
  bool answer = false;
  double score = 0.0;
  SearchStats stats;
};

struct SessionTrace {
  std::vector<SessionIteration> iterations;
  IdSet final_diagnosis;

  std::size_t queries() const {
    std::size_t n = 0;
    for (const auto& it : iterations) n += it.query.has_value();
    return n;
  }
};

// Raised when a session cannot continue; carries the iterations completed so far.
class SessionError : public Error {
 public:
  SessionError(const std::string& message, SessionTrace partial) : Error(message), partial_(std::move(partial)) {}

  const SessionTrace& partial() const noexcept { return partial_; }

 private:
  SessionTrace partial_;
};

using AnswerSource = std::function<bool(const Dpi&, Query)>;

struct SessionOptions {
  Algorithm algorithm = Algorithm::rbfhs;
  std::size_t ld = 2;
  std::size_t max_iterations = 10000;
  SearchOptions search;
};

// Alternates diagnosis search and measurement until the search (asked for
// ld >= 2 diagnoses) returns exactly one.
inline SessionTrace run_session(Dpi dpi, const FaultProbabilities& pr, const AnswerSource& answer,
                                const SessionOptions& options) {
  if (options.ld < 2) throw Error("sequential diagnosis needs ld >= 2");
  SessionTrace trace;
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration >= options.max_iterations) throw SessionError("sequential session exceeded the iteration cap", trace);
    SearchResult r = search(options.algorithm, dpi, pr, options.ld, options.search);
    SessionIteration it;
    it.stats = r.stats;
    it.diagnoses = r.diagnoses;
    if (r.diagnoses.empty()) throw SessionError("no diagnosis is consistent with the answers given", trace);
    if (r.diagnoses.size() == 1) {
      trace.final_diagnosis = r.diagnoses.front().ids;
      trace.iterations.push_back(std::move(it));
      return trace;
    }
    std::optional<ScoredQuery> selected;
    try {
      selected = ent_select(dpi, r.diagnoses);
    } catch (const Error& e) {
      trace.iterations.push_back(std::move(it));
      throw SessionError(e.what(), trace);
    }
    ScoredQuery& q = *selected;
    it.query = q.query;
    it.score = q.score;
    it.answer = answer(dpi, q.query);
    dpi = update_dpi(dpi, q.query, it.answer);
    trace.iterations.push_back(std::move(it));
  }
}

// Simulated session towards a known actual diagnosis.
inline SessionTrace run_session(const Dpi& dpi, const FaultProbabilities& pr, const IdSet& actual,
                                const SessionOptions& options) {
  if (!dpi.is_minimal_diagnosis(actual)) {
    throw Error("actual diagnosis " + dpi.describe(actual) + " is not a minimal diagnosis");
  }
  return run_session(dpi, pr, [&](const Dpi&, Query q) { return oracle_answer(q, actual); }, options);
}

}  // namespace rbfhs
