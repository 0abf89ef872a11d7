#pragma once

#include <span>
#include <vector>

#include "rbfhs/logic/cnf.hpp"
#include "rbfhs/logic/formula.hpp"
#include "rbfhs/logic/sat.hpp"

namespace rbfhs::logic {

inline bool is_consistent(std::span<const Formula> sentences) {
  return is_satisfiable(to_clause_set(sentences));
}

inline bool is_consistent(std::initializer_list<Formula> sentences) {
  return is_consistent(std::span<const Formula>(sentences.begin(), sentences.size()));
}

// sentences ⊨ goal  iff  sentences ∪ {¬goal} is unsatisfiable.
inline bool entails(std::span<const Formula> sentences, const Formula& goal) {
  ClauseSet cs = to_clause_set(sentences);
  cs.add(Formula::negation(goal));
  return !is_satisfiable(cs);
}

inline bool entails(std::initializer_list<Formula> sentences, const Formula& goal) {
  return entails(std::span<const Formula>(sentences.begin(), sentences.size()), goal);
}

// Encodes a fixed sentence set once and answers several queries against it.
class Reasoner {
 public:
  explicit Reasoner(std::span<const Formula> sentences) : base_(to_clause_set(sentences)) {}

  bool consistent() {
    if (!consistent_) consistent_ = is_satisfiable(base_);
    return *consistent_;
  }

  bool entails(const Formula& goal) const {
    ClauseSet cs = base_;
    cs.add(Formula::negation(goal));
    return !is_satisfiable(cs);
  }

 private:
  ClauseSet base_;
  std::optional<bool> consistent_;
};

}  // namespace rbfhs::logic
