#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rbfhs/conflict.hpp"
#include "rbfhs/dpi.hpp"
#include "rbfhs/probability.hpp"

namespace rbfhs {

inline constexpr std::size_t kAllDiagnoses = std::numeric_limits<std::size_t>::max();

struct SearchStats {
  std::uint64_t peak_live_nodes = 0;
  std::uint64_t nodes_generated = 0;
  std::uint64_t label_calls = 0;
  std::uint64_t conflict_computations = 0;
  std::uint64_t conflict_reuses = 0;
  std::uint64_t validity_checks = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t max_conflict_size = 0;
  double wall_time_ms = 0.0;
};

struct Label {
  enum class Kind { valid, closed, conflict };

  Kind kind;
  Conflict conflict;    // Kind::conflict only
  bool reused = false;  // conflict taken from the stored list
};

struct TraceEvent {
  enum class Kind { label, expand, backtrack, inherit, diag };

  Kind kind;
  IdSet node;
  LogProb f;
  LogProb backed_up;  // F
  LogProb bound;
  Label label{Label::Kind::closed, {}, false};
  std::vector<IdSet> children;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct SearchOptions {
  ConflictStrategy strategy = ConflictStrategy::quickxplain;
  TraceSink trace;
  // Throw if two live non-dummy nodes ever share an id-set (RBF-HS only).
  bool check_live_duplicates = false;
};

struct SearchResult {
  std::vector<Diagnosis> diagnoses;
  std::vector<Conflict> conflicts;  // stored conflict list at termination
  SearchStats stats;
};

namespace detail {

// Live/peak node accounting. Every search node registers on construction
// and deregisters on destruction.
class LiveNodes {
 public:
  explicit LiveNodes(bool check_duplicates) : check_duplicates_(check_duplicates) {}

  void acquire(const IdSet& ids, bool dummy) {
    ++live_;
    ++generated_;
    peak_ = std::max(peak_, live_);
    if (check_duplicates_ && !dummy && !ids_.insert(ids).second) {
      throw Error("duplicate live node");
    }
  }

  void release(const IdSet& ids, bool dummy) {
    --live_;
    if (check_duplicates_ && !dummy) ids_.erase(ids);
  }

  std::uint64_t live() const noexcept { return live_; }
  std::uint64_t peak() const noexcept { return peak_; }
  std::uint64_t generated() const noexcept { return generated_; }

 private:
  bool check_duplicates_;
  std::uint64_t live_ = 0;
  std::uint64_t peak_ = 0;
  std::uint64_t generated_ = 0;
  std::unordered_set<IdSet, IdSetHash> ids_;
};

class SearchNode {
 public:
  SearchNode(LiveNodes& tracker, IdSet ids, LogProb f)
      : tracker_(&tracker), ids_(std::move(ids)), f_(f), backed_up_(f) {
    tracker_->acquire(ids_, false);
  }

  static SearchNode dummy(LiveNodes& tracker) { return SearchNode(tracker); }

  SearchNode(SearchNode&& o) noexcept
      : tracker_(std::exchange(o.tracker_, nullptr)),
        ids_(std::move(o.ids_)),
        f_(o.f_),
        backed_up_(o.backed_up_),
        dummy_(o.dummy_) {}

  SearchNode& operator=(SearchNode&& o) noexcept {
    if (this != &o) {
      drop();
      tracker_ = std::exchange(o.tracker_, nullptr);
      ids_ = std::move(o.ids_);
      f_ = o.f_;
      backed_up_ = o.backed_up_;
      dummy_ = o.dummy_;
    }
    return *this;
  }

  SearchNode(const SearchNode&) = delete;
  SearchNode& operator=(const SearchNode&) = delete;

  ~SearchNode() { drop(); }

  const IdSet& ids() const noexcept { return ids_; }
  LogProb f() const noexcept { return f_; }
  LogProb backed_up() const noexcept { return backed_up_; }
  void set_backed_up(LogProb v) noexcept { backed_up_ = v; }
  bool is_dummy() const noexcept { return dummy_; }

 private:
  explicit SearchNode(LiveNodes& tracker)
      : tracker_(&tracker), f_(LogProb::minus_infinity()), backed_up_(LogProb::minus_infinity()), dummy_(true) {
    tracker_->acquire(ids_, true);
  }

  void drop() noexcept {
    if (tracker_) {
      tracker_->release(ids_, dummy_);
      tracker_ = nullptr;
    }
  }

  LiveNodes* tracker_;
  IdSet ids_;
  LogProb f_;
  LogProb backed_up_;
  bool dummy_ = false;
};

// Decreasing F; ties go to the smaller node, then lexicographically smaller
// ids; the dummy sorts after every real node.
inline bool better_by_backed_up(const SearchNode& a, const SearchNode& b) {
  if (a.backed_up() != b.backed_up()) return a.backed_up() > b.backed_up();
  if (a.is_dummy() != b.is_dummy()) return b.is_dummy();
  return canonical_less(a.ids(), b.ids());
}

inline bool better_by_cost(const SearchNode& a, const SearchNode& b) {
  if (a.f() != b.f()) return a.f() > b.f();
  return canonical_less(a.ids(), b.ids());
}

// State and labeling shared by RBF-HS and HS-Tree: the diagnosis list D, the
// stored conflict list C and the counters.
class SearchCore {
 public:
  SearchCore(const Dpi& dpi, const FaultProbabilities& pr, std::size_t ld, const SearchOptions& options)
      : dpi_(dpi), cost_(pr), ld_(ld), options_(options), valid_(dpi), live_(options.check_live_duplicates) {
    if (ld == 0) throw Error("number of leading diagnoses must be at least 1");
    if (pr.size() != dpi.size()) throw Error("fault probabilities do not cover every axiom");
    if (!pr.cost_adjusted) throw Error("fault probabilities must be cost-adjusted");
    for (double p : pr.values) {
      if (!(p > 0.0 && p < 0.5)) throw Error("cost-adjusted probabilities must lie in (0, 0.5)");
    }
  }

  // Trivial cases. Returns true when the search proper has to run.
  bool start() {
    ConflictOutcome first = find_min_conflict(dpi_, IdSet{}, valid_, options_.strategy);
    if (first.kind == ConflictOutcome::Kind::empty_conflict) return false;
    if (first.kind == ConflictOutcome::Kind::no_conflict) {
      add_diagnosis(IdSet{});
      return false;
    }
    ++stats_.conflict_computations;
    store_conflict(std::move(first.conflict));
    root_pending_ = true;
    return true;
  }

  Label label(const IdSet& n) {
    ++stats_.label_calls;
    // the root takes the conflict computed by start()
    if (root_pending_ && n.empty()) {
      root_pending_ = false;
      return {Label::Kind::conflict, conflicts_.front(), false};
    }
    for (const Diagnosis& d : diagnoses_) {
      if (n.includes(d.ids)) return {Label::Kind::closed, {}, false};
    }
    for (const Conflict& c : conflicts_) {
      if (!c.intersects(n)) {
        ++stats_.conflict_reuses;
        return {Label::Kind::conflict, c, true};
      }
    }
    ConflictOutcome out = find_min_conflict(dpi_, n, valid_, options_.strategy);
    if (out.kind == ConflictOutcome::Kind::no_conflict) return {Label::Kind::valid, {}, false};
    if (out.kind == ConflictOutcome::Kind::empty_conflict) {
      throw Error("background became invalid during search");
    }
    ++stats_.conflict_computations;
    store_conflict(out.conflict);
    return {Label::Kind::conflict, std::move(out.conflict), false};
  }

  // True once ld diagnoses are known.
  bool add_diagnosis(IdSet ids) {
    LogProb c = cost_.cost(ids);
    diagnoses_.push_back({std::move(ids), c});
    return diagnoses_.size() >= ld_;
  }

  void emit(TraceEvent e) const {
    if (options_.trace) options_.trace(e);
  }

  bool tracing() const noexcept { return static_cast<bool>(options_.trace); }

  LogProb cost(const IdSet& ids) const { return cost_.cost(ids); }
  LiveNodes& live() { return live_; }
  SearchStats& stats() { return stats_; }
  std::size_t diagnoses_found() const noexcept { return diagnoses_.size(); }

  SearchResult finish(double elapsed_ms) {
    stats_.peak_live_nodes = live_.peak();
    stats_.nodes_generated = live_.generated();
    stats_.validity_checks = valid_.calls();
    stats_.wall_time_ms = elapsed_ms;
    return {std::move(diagnoses_), std::move(conflicts_), stats_};
  }

 private:
  void store_conflict(Conflict c) {
    stats_.max_conflict_size = std::max<std::uint64_t>(stats_.max_conflict_size, c.size());
    conflicts_.push_back(std::move(c));
  }

  const Dpi& dpi_;
  CostModel cost_;
  std::size_t ld_;
  const SearchOptions& options_;
  ValidityCheck valid_;
  LiveNodes live_;
  SearchStats stats_;
  std::vector<Diagnosis> diagnoses_;
  std::vector<Conflict> conflicts_;
  bool root_pending_ = false;
};

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

class RecursiveBestFirst {
 public:
  RecursiveBestFirst(const Dpi& dpi, const FaultProbabilities& pr, std::size_t ld, const SearchOptions& options)
      : core_(dpi, pr, ld, options) {}

  SearchResult run() {
    Stopwatch clock;
    if (core_.start()) {
      SearchNode root(core_.live(), IdSet{}, core_.cost(IdSet{}));
      explore(root, root.f(), LogProb::minus_infinity());
    }
    return core_.finish(clock.elapsed_ms());
  }

 private:
  static constexpr LogProb kMinusInf = LogProb::minus_infinity();

  // Explores n with backed-up value `backed_up` below `bound`; returns the
  // new backed-up value of n.
  LogProb explore(const SearchNode& n, LogProb backed_up, LogProb bound) {
    Label label = core_.label(n.ids());
    if (core_.tracing()) core_.emit({TraceEvent::Kind::label, n.ids(), n.f(), backed_up, bound, label, {}});
    if (label.kind == Label::Kind::closed) return kMinusInf;
    if (label.kind == Label::Kind::valid) {
      if (core_.tracing()) core_.emit({TraceEvent::Kind::diag, n.ids(), n.f(), backed_up, bound, label, {}});
      if (core_.add_diagnosis(n.ids())) aborted_ = true;
      return kMinusInf;
    }

    std::vector<SearchNode> children;
    children.reserve(label.conflict.size() + 1);
    const bool seen_before = n.f() > backed_up;
    for (AxiomIndex e : label.conflict) {
      IdSet ids = n.ids().with(e);
      LogProb f = core_.cost(ids);
      SearchNode child(core_.live(), std::move(ids), f);
      if (seen_before) {
        child.set_backed_up(min(backed_up, f));
        if (core_.tracing() && child.backed_up() < f) {
          core_.emit({TraceEvent::Kind::inherit, child.ids(), f, child.backed_up(), bound, {}, {}});
        }
      }
      children.push_back(std::move(child));
    }
    if (children.size() == 1) children.push_back(SearchNode::dummy(core_.live()));
    std::sort(children.begin(), children.end(), better_by_backed_up);
    if (core_.tracing()) {
      TraceEvent e{TraceEvent::Kind::expand, n.ids(), n.f(), backed_up, bound, label, {}};
      for (const auto& c : children) {
        if (!c.is_dummy()) e.children.push_back(c.ids());
      }
      core_.emit(std::move(e));
    }

    SearchNode best = take_first(children);
    while (best.backed_up() >= bound && best.backed_up() > kMinusInf) {
      LogProb child_bound = max(bound, children.front().backed_up());
      LogProb result = explore(best, best.backed_up(), child_bound);
      if (aborted_) return kMinusInf;
      best.set_backed_up(result);
      insert_sorted(children, std::move(best));
      best = take_first(children);
    }
    ++core_.stats().backtracks;
    if (core_.tracing()) {
      core_.emit({TraceEvent::Kind::backtrack, n.ids(), n.f(), best.backed_up(), bound, label, {}});
    }
    return best.backed_up();
  }

  static SearchNode take_first(std::vector<SearchNode>& nodes) {
    SearchNode first = std::move(nodes.front());
    nodes.erase(nodes.begin());
    return first;
  }

  static void insert_sorted(std::vector<SearchNode>& nodes, SearchNode n) {
    auto pos = std::upper_bound(nodes.begin(), nodes.end(), n, better_by_backed_up);
    nodes.insert(pos, std::move(n));
  }

  SearchCore core_;
  bool aborted_ = false;
};

class HittingSetTree {
 public:
  HittingSetTree(const Dpi& dpi, const FaultProbabilities& pr, std::size_t ld, const SearchOptions& options)
      : core_(dpi, pr, ld, options) {}

  SearchResult run() {
    Stopwatch clock;
    if (core_.start()) {
      // max-heap on cost: the comparator says "a is worse than b"
      auto worse = [](const SearchNode& a, const SearchNode& b) { return better_by_cost(b, a); };
      std::vector<SearchNode> open;
      std::unordered_set<IdSet, IdSetHash> queued;
      open.emplace_back(core_.live(), IdSet{}, core_.cost(IdSet{}));
      queued.insert(IdSet{});
      bool done = false;
      while (!open.empty() && !done) {
        std::pop_heap(open.begin(), open.end(), worse);
        SearchNode n = std::move(open.back());
        open.pop_back();
        queued.erase(n.ids());

        Label label = core_.label(n.ids());
        const LogProb none = LogProb::minus_infinity();
        if (core_.tracing()) core_.emit({TraceEvent::Kind::label, n.ids(), n.f(), n.f(), none, label, {}});
        if (label.kind == Label::Kind::closed) continue;
        if (label.kind == Label::Kind::valid) {
          if (core_.tracing()) core_.emit({TraceEvent::Kind::diag, n.ids(), n.f(), n.f(), none, label, {}});
          done = core_.add_diagnosis(n.ids());
          continue;
        }
        TraceEvent expand{TraceEvent::Kind::expand, n.ids(), n.f(), n.f(), none, label, {}};
        for (AxiomIndex e : label.conflict) {
          IdSet ids = n.ids().with(e);
          if (queued.contains(ids)) continue;
          queued.insert(ids);
          if (core_.tracing()) expand.children.push_back(ids);
          LogProb f = core_.cost(ids);
          open.emplace_back(core_.live(), std::move(ids), f);
          std::push_heap(open.begin(), open.end(), worse);
        }
        if (core_.tracing()) core_.emit(std::move(expand));
      }
    }
    return core_.finish(clock.elapsed_ms());
  }

 private:
  SearchCore core_;
};

}  // namespace detail

// The ld most probable minimal diagnoses in linear space (recursive
// best-first hitting-set search).
inline SearchResult rbf_hs(const Dpi& dpi, const FaultProbabilities& pr, std::size_t ld,
                           const SearchOptions& options = {}) {
  return detail::RecursiveBestFirst(dpi, pr, ld, options).run();
}

// Reiter's HS-Tree in uniform-cost (best-first) order, sharing the labeling
// of rbf_hs plus a duplicate check on queued nodes.
inline SearchResult hs_tree(const Dpi& dpi, const FaultProbabilities& pr, std::size_t ld,
                            const SearchOptions& options = {}) {
  return detail::HittingSetTree(dpi, pr, ld, options).run();
}

enum class Algorithm { rbfhs, hstree };

inline SearchResult search(Algorithm algo, const Dpi& dpi, const FaultProbabilities& pr, std::size_t ld,
                           const SearchOptions& options = {}) {
  return algo == Algorithm::rbfhs ? rbf_hs(dpi, pr, ld, options) : hs_tree(dpi, pr, ld, options);
}

inline const char* to_string(Algorithm a) { return a == Algorithm::rbfhs ? "rbfhs" : "hstree"; }

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "rbfhs") return Algorithm::rbfhs;
  if (s == "hstree") return Algorithm::hstree;
  throw Error("unknown algorithm '" + s + "' (expected rbfhs or hstree)");
}

// Costs are printed as 10 * probability, the scale used in hand-worked traces.
inline std::string format_scaled(LogProb v) {
  if (v.is_minus_infinity()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", 10.0 * v.linear());
  return buf;
}

// One line per event: KIND node key=value...
inline std::string format_trace(const TraceEvent& e, const Dpi& dpi) {
  std::string out;
  switch (e.kind) {
    case TraceEvent::Kind::label: {
      out = "LABEL " + dpi.describe(e.node) + " ";
      switch (e.label.kind) {
        case Label::Kind::valid: out += "valid"; break;
        case Label::Kind::closed: out += "closed"; break;
        case Label::Kind::conflict:
          out += "conflict=" + dpi.describe(e.label.conflict) + (e.label.reused ? " reused" : " computed");
          break;
      }
      out += " f=" + format_scaled(e.f) + " F=" + format_scaled(e.backed_up) + " bound=" + format_scaled(e.bound);
      break;
    }
    case TraceEvent::Kind::expand: {
      out = "EXPAND " + dpi.describe(e.node) + " children=";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ";";
        out += dpi.describe(e.children[i]);
      }
      break;
    }
    case TraceEvent::Kind::backtrack:
      out = "BACKTRACK " + dpi.describe(e.node) + " F=" + format_scaled(e.backed_up) +
            " bound=" + format_scaled(e.bound);
      break;
    case TraceEvent::Kind::inherit:
      out = "INHERIT " + dpi.describe(e.node) + " f=" + format_scaled(e.f) + " F=" + format_scaled(e.backed_up);
      break;
    case TraceEvent::Kind::diag:
      out = "DIAG " + dpi.describe(e.node) + " pr=" + format_scaled(e.f);
      break;
  }
  return out;
}

}  // namespace rbfhs
