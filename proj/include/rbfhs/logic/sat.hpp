#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rbfhs/logic/cnf.hpp"

namespace rbfhs::logic {

// Complete DPLL: unit propagation plus chronological backtracking. Branches
// on the lowest-numbered unassigned variable, false first, so every run on
// the same clause set visits the same search tree.
class DpllSolver {
 public:
  explicit DpllSolver(const ClauseSet& cs) : cs_(cs), value_(cs.num_vars() + 1, 0) {}

  // Returns a model indexed by variable (entry 0 unused) or nullopt.
  std::optional<std::vector<bool>> solve() {
    if (cs_.has_empty_clause()) return std::nullopt;
    if (!search()) return std::nullopt;
    std::vector<bool> model(value_.size(), false);
    for (std::size_t v = 1; v < value_.size(); ++v) model[v] = value_[v] > 0;
    return model;
  }

  std::uint64_t decisions() const noexcept { return decisions_; }

 private:
  int lit_value(Literal l) const {
    int v = value_[var_of(l)];
    return l > 0 ? v : -v;
  }

  void assign(Literal l) {
    value_[var_of(l)] = l > 0 ? 1 : -1;
    trail_.push_back(var_of(l));
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = 0;
      trail_.pop_back();
    }
  }

  // False on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Clause& c : cs_.clauses()) {
        Literal unit = 0;
        int open = 0;
        bool satisfied = false;
        for (Literal l : c) {
          int v = lit_value(l);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++open;
            unit = l;
          }
        }
        if (satisfied) continue;
        if (open == 0) return false;
        if (open == 1) {
          assign(unit);
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    const std::size_t mark = trail_.size();
    if (!propagate()) {
      undo_to(mark);
      return false;
    }
    std::uint32_t pick = 0;
    for (std::uint32_t v = 1; v < value_.size(); ++v) {
      if (value_[v] == 0) {
        pick = v;
        break;
      }
    }
    if (pick == 0) return true;
    for (Literal l : {-static_cast<Literal>(pick), static_cast<Literal>(pick)}) {
      ++decisions_;
      const std::size_t before = trail_.size();
      assign(l);
      if (search()) return true;
      undo_to(before);
    }
    undo_to(mark);
    return false;
  }

  const ClauseSet& cs_;
  std::vector<int> value_;
  std::vector<std::uint32_t> trail_;
  std::uint64_t decisions_ = 0;
};

inline bool is_satisfiable(const ClauseSet& cs) { return DpllSolver(cs).solve().has_value(); }

}  // namespace rbfhs::logic
