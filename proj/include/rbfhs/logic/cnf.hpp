#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "rbfhs/logic/formula.hpp"

namespace rbfhs::logic {

// DIMACS-style literal: +v / -v for variable v >= 1.
using Literal = std::int32_t;
using Clause = std::vector<Literal>;

inline std::uint32_t var_of(Literal l) { return static_cast<std::uint32_t>(std::abs(l)); }

// Clause database produced by definitional (Tseitin) translation. Named atoms
// are listed in atoms(); every other variable is an auxiliary definition.
class ClauseSet {
 public:
  std::uint32_t num_vars() const noexcept { return num_vars_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  bool has_empty_clause() const noexcept { return has_empty_; }
  const std::map<std::string, std::uint32_t>& atoms() const noexcept { return atoms_; }

  // Adds a clause; tautologies are dropped, duplicate literals merged.
  void add_clause(Clause c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        if (c[i] == -c[j]) return;
      }
    }
    if (c.empty()) has_empty_ = true;
    clauses_.push_back(std::move(c));
  }

  // Asserts `f`.
  void add(const Formula& f) {
    // Top-level conjunctions are split instead of defined.
    if (f.kind() == Connective::conjunction) {
      add(f.lhs());
      add(f.rhs());
      return;
    }
    if (f.kind() == Connective::truth) return;
    if (f.kind() == Connective::falsity) {
      add_clause({});
      return;
    }
    if (f.kind() == Connective::disjunction) {
      Clause c;
      if (flatten_disjunction(f, c)) add_clause(std::move(c));
      return;
    }
    add_clause({encode(f)});
  }

  std::uint32_t atom_var(const std::string& name) {
    auto [it, inserted] = atoms_.try_emplace(name, 0);
    if (inserted) it->second = ++num_vars_;
    return it->second;
  }

 private:
  // Collects literals of a top-level disjunction; returns false when a
  // disjunct is the constant true.
  bool flatten_disjunction(const Formula& f, Clause& out) {
    if (f.kind() == Connective::disjunction) {
      return flatten_disjunction(f.lhs(), out) && flatten_disjunction(f.rhs(), out);
    }
    if (f.kind() == Connective::truth) return false;
    if (f.kind() == Connective::falsity) return true;
    out.push_back(encode(f));
    return true;
  }

  Literal constant_true() {
    if (true_var_ == 0) {
      true_var_ = ++num_vars_;
      add_clause({static_cast<Literal>(true_var_)});
    }
    return static_cast<Literal>(true_var_);
  }

  Literal fresh() { return static_cast<Literal>(++num_vars_); }

  // Returns a literal equivalent to `f` under the added definitions.
  Literal encode(const Formula& f) {
    switch (f.kind()) {
      case Connective::truth: return constant_true();
      case Connective::falsity: return -constant_true();
      case Connective::atom: return static_cast<Literal>(atom_var(f.name()));
      case Connective::negation: return -encode(f.operand());
      default: break;
    }
    Literal a = encode(f.lhs());
    Literal b = encode(f.rhs());
    Literal x = fresh();
    switch (f.kind()) {
      case Connective::conjunction:
        add_clause({-x, a});
        add_clause({-x, b});
        add_clause({x, -a, -b});
        break;
      case Connective::disjunction:
        add_clause({-x, a, b});
        add_clause({x, -a});
        add_clause({x, -b});
        break;
      case Connective::implication:
        add_clause({-x, -a, b});
        add_clause({x, a});
        add_clause({x, -b});
        break;
      case Connective::biconditional:
        add_clause({-x, -a, b});
        add_clause({-x, a, -b});
        add_clause({x, a, b});
        add_clause({x, -a, -b});
        break;
      default: break;
    }
    return x;
  }

  std::uint32_t num_vars_ = 0;
  std::uint32_t true_var_ = 0;
  bool has_empty_ = false;
  std::vector<Clause> clauses_;
  std::map<std::string, std::uint32_t> atoms_;
};

template <typename Range>
ClauseSet to_clause_set(const Range& formulas) {
  ClauseSet cs;
  for (const Formula& f : formulas) cs.add(f);
  return cs;
}

inline ClauseSet to_clause_set(std::initializer_list<Formula> formulas) {
  ClauseSet cs;
  for (const Formula& f : formulas) cs.add(f);
  return cs;
}

}  // namespace rbfhs::logic
