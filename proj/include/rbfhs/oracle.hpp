#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "rbfhs/dpi.hpp"

namespace rbfhs {

// Exhaustive reference implementations. They are the ground truth for the
// search and conflict tests and must stay independent of both.

inline constexpr std::size_t kBruteForceLimit = 20;

namespace detail {

inline void guard_size(std::size_t n) {
  if (n > kBruteForceLimit) {
    throw Error("brute force limited to " + std::to_string(kBruteForceLimit) + " axioms, got " +
                std::to_string(n));
  }
}

// Calls fn(IdSet) for every subset of 0..n-1, grouped by ascending
// cardinality.
template <typename Fn>
void for_each_subset_by_size(std::size_t n, Fn&& fn) {
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<AxiomIndex> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<AxiomIndex>(i);
    while (true) {
      fn(IdSet(pick));
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

}  // namespace detail

inline std::vector<Diagnosis> brute_force_min_diagnoses(const Dpi& dpi, const FaultProbabilities& pr) {
  detail::guard_size(dpi.size());
  CostModel cost(pr);
  std::vector<Diagnosis> found;
  detail::for_each_subset_by_size(dpi.size(), [&](const IdSet& s) {
    for (const auto& d : found) {
      if (s.includes(d.ids)) return;
    }
    if (dpi.is_diagnosis(s)) found.push_back({s, cost.cost(s)});
  });
  std::sort(found.begin(), found.end(), [](const Diagnosis& a, const Diagnosis& b) {
    if (a.log_probability != b.log_probability) return a.log_probability > b.log_probability;
    return a.ids < b.ids;
  });
  return found;
}

inline std::vector<Conflict> brute_force_min_conflicts(const Dpi& dpi) {
  detail::guard_size(dpi.size());
  std::vector<Conflict> found;
  detail::for_each_subset_by_size(dpi.size(), [&](const IdSet& s) {
    for (const auto& c : found) {
      if (s.includes(c)) return;
    }
    if (!dpi.is_valid_set(s)) found.push_back(s);
  });
  // enumeration order is already size-then-lexicographic
  return found;
}

// All subset-minimal hitting sets of `family` over 0..n-1.
inline std::vector<IdSet> brute_force_min_hitting_sets(std::size_t n, const std::vector<IdSet>& family) {
  detail::guard_size(n);
  std::vector<IdSet> found;
  detail::for_each_subset_by_size(n, [&](const IdSet& s) {
    for (const auto& h : found) {
      if (s.includes(h)) return;
    }
    for (const auto& c : family) {
      if (!s.intersects(c)) return;
    }
    found.push_back(s);
  });
  return found;
}

// Portable draws: std::uniform_int_distribution differs across standard
// libraries, which would break seeded fixtures.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + x % span;
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Abstract DPI with `conflicts` random conflicts of size 1..max_size over
// `components` components, reduced to an antichain.
inline Dpi gen_random_dpi(std::size_t components, std::size_t conflicts, std::size_t max_size,
                          std::uint64_t seed, std::size_t min_size = 1) {
  if (components == 0) throw Error("component count must be positive");
  if (max_size == 0 || max_size > components) throw Error("max conflict size must lie in [1, components]");
  if (min_size == 0 || min_size > max_size) throw Error("min conflict size must lie in [1, max_size]");
  SeededRng rng(seed);
  std::vector<IdSet> family;
  for (std::size_t c = 0; c < conflicts; ++c) {
    std::size_t size = rng.between(min_size, max_size);
    std::vector<AxiomIndex> pool(components);
    for (std::size_t i = 0; i < components; ++i) pool[i] = static_cast<AxiomIndex>(i);
    // partial Fisher-Yates
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t j = rng.between(i, components - 1);
      std::swap(pool[i], pool[j]);
    }
    family.emplace_back(std::vector<AxiomIndex>(pool.begin(), pool.begin() + static_cast<long>(size)));
  }
  std::vector<IdSet> antichain;
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < family.size() && !dominated; ++j) {
      if (i == j) continue;
      if (family[i] == family[j]) {
        dominated = j < i;  // keep the first copy
      } else if (family[i].includes(family[j])) {
        dominated = true;
      }
    }
    if (!dominated) antichain.push_back(family[i]);
  }
  return Dpi::abstract(components, std::move(antichain));
}

// Fault probabilities drawn uniformly from [lo, hi].
inline FaultProbabilities gen_random_pr(std::size_t components, std::uint64_t seed, double lo = 0.01,
                                        double hi = 0.49) {
  SeededRng rng(seed ^ 0x5bd1e995u);
  FaultProbabilities pr;
  for (std::size_t i = 0; i < components; ++i) pr.values.push_back(lo + (hi - lo) * rng.unit());
  pr.cost_adjusted = hi < 0.5;
  return pr;
}

}  // namespace rbfhs
