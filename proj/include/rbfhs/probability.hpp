#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "rbfhs/ids.hpp"

namespace rbfhs {

// Natural-log probability. Minus infinity is a dedicated state rather than
// an IEEE value, so it can only enter through minus_infinity().
class LogProb {
 public:
  constexpr LogProb() = default;

  static LogProb from_log(double log_value) {
    if (!std::isfinite(log_value)) throw Error("log probability must be finite");
    return LogProb(log_value, false);
  }

  static LogProb from_linear(double p) {
    if (!(p > 0.0)) throw Error("probability must be positive");
    return LogProb(std::log(p), false);
  }

  static constexpr LogProb minus_infinity() { return LogProb(0.0, true); }

  bool is_minus_infinity() const noexcept { return neg_inf_; }
  double log() const noexcept { return neg_inf_ ? -INFINITY : value_; }
  double linear() const noexcept { return neg_inf_ ? 0.0 : std::exp(value_); }

  friend std::partial_ordering operator<=>(const LogProb& a, const LogProb& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_ ? std::partial_ordering::equivalent
                                          : a.neg_inf_ ? std::partial_ordering::less
                                                       : std::partial_ordering::greater;
    return a.value_ <=> b.value_;
  }
  friend bool operator==(const LogProb& a, const LogProb& b) {
    return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.value_ == b.value_);
  }

  friend LogProb max(const LogProb& a, const LogProb& b) { return a < b ? b : a; }
  friend LogProb min(const LogProb& a, const LogProb& b) { return b < a ? b : a; }

 private:
  constexpr LogProb(double v, bool neg_inf) : value_(v), neg_inf_(neg_inf) {}

  double value_ = 0.0;
  bool neg_inf_ = true;
};

// Fault probability per axiom position, each in (0,1).
struct FaultProbabilities {
  std::vector<double> values;
  bool cost_adjusted = false;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](AxiomIndex i) const { return values.at(i); }
};

inline void check_probabilities(std::span<const double> values) {
  for (double p : values) {
    if (!(p > 0.0 && p < 1.0)) throw Error("fault probability " + std::to_string(p) + " outside (0,1)");
  }
}

// pr_adj(ax) = c * pr(ax); preserves all ratios between components.
inline FaultProbabilities cost_adjust(const FaultProbabilities& pr, double c) {
  if (!(c > 0.0 && c < 0.5)) throw Error("adjustment constant must lie in (0, 0.5)");
  check_probabilities(pr.values);
  FaultProbabilities out;
  out.values.reserve(pr.size());
  for (double p : pr.values) out.values.push_back(c * p);
  out.cost_adjusted = true;
  return out;
}

// Uniform c < 0.5: probability order of subsets equals ascending cardinality.
inline FaultProbabilities cardinality_pr(std::size_t components, double c) {
  if (!(c > 0.0 && c < 0.5)) throw Error("cardinality constant must lie in (0, 0.5)");
  return FaultProbabilities{std::vector<double>(components, c), true};
}

// Evaluates pr(X) = prod_{x in X} pr(x) * prod_{x not in X} (1 - pr(x)) in
// log scale as base + sum of per-axiom deltas. Deltas are summed in sorted
// order so that sets with equal delta multisets get bit-identical costs;
// search tie-breaking depends on that.
class CostModel {
 public:
  CostModel() = default;

  explicit CostModel(const FaultProbabilities& pr) {
    check_probabilities(pr.values);
    delta_.reserve(pr.size());
    for (double p : pr.values) {
      base_ += std::log1p(-p);
      delta_.push_back(std::log(p) - std::log1p(-p));
    }
  }

  std::size_t size() const noexcept { return delta_.size(); }

  LogProb cost(const IdSet& x) const {
    thread_local std::vector<double> scratch;
    scratch.clear();
    for (AxiomIndex i : x) {
      if (i >= delta_.size()) throw Error("missing probability entry for axiom position " + std::to_string(i));
      scratch.push_back(delta_[i]);
    }
    std::sort(scratch.begin(), scratch.end());
    double sum = 0.0;
    for (double d : scratch) sum += d;
    return LogProb::from_log(sum + base_);
  }

 private:
  double base_ = 0.0;
  std::vector<double> delta_;
};

inline LogProb log_pr_of(const FaultProbabilities& pr, const IdSet& x) { return CostModel(pr).cost(x); }

inline double pr_of(const FaultProbabilities& pr, const IdSet& x) { return log_pr_of(pr, x).linear(); }

// Divides each value by the sum over the list (log-sum-exp).
inline std::vector<double> normalize(std::span<const LogProb> values) {
  std::vector<double> out(values.size(), 0.0);
  double top = -INFINITY;
  for (const auto& v : values) top = std::max(top, v.log());
  if (!std::isfinite(top)) return out;
  double sum = 0.0;
  for (const auto& v : values) sum += std::exp(v.log() - top);
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::exp(values[i].log() - top) / sum;
  return out;
}

}  // namespace rbfhs
