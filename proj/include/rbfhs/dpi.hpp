#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbfhs/ids.hpp"
#include "rbfhs/logic/formula.hpp"
#include "rbfhs/logic/reasoner.hpp"
#include "rbfhs/probability.hpp"

namespace rbfhs {

using logic::Formula;

enum class Backend { reasoner, abstract };

// Diagnosis problem instance <K, B, P, N>.
//
// reasoner backend: K holds propositional sentences and validity is decided
// by the SAT-based reasoner.
//
// abstract backend: K holds bare component ids and the minimal conflicts are
// given directly as an antichain. Measurements are component ids too, read
// with membership as entailment: a set S is valid iff S ∪ P contains no
// attached conflict and no member of N.
class Dpi {
 public:
  static Dpi reasoner(std::vector<std::string> ids, std::vector<Formula> k, std::vector<Formula> b = {},
                      std::vector<Formula> p = {}, std::vector<Formula> n = {}) {
    if (ids.size() != k.size()) throw Error("axiom id count does not match sentence count");
    Dpi d(Backend::reasoner, std::move(ids));
    d.k_ = std::move(k);
    d.b_ = std::move(b);
    d.p_ = std::move(p);
    d.n_ = std::move(n);
    return d;
  }

  static Dpi abstract(std::vector<std::string> ids, std::vector<IdSet> conflicts) {
    Dpi d(Backend::abstract, std::move(ids));
    for (const IdSet& c : conflicts) {
      for (AxiomIndex i : c) {
        if (i >= d.size()) throw Error("conflict refers to unknown component position " + std::to_string(i));
      }
    }
    for (std::size_t i = 0; i < conflicts.size(); ++i) {
      for (std::size_t j = 0; j < conflicts.size(); ++j) {
        if (i != j && conflicts[j].includes(conflicts[i])) {
          throw Error("conflict family is not an antichain");
        }
      }
    }
    d.family_ = std::move(conflicts);
    return d;
  }

  // Components named "1".."n".
  static Dpi abstract(std::size_t components, std::vector<IdSet> conflicts) {
    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= components; ++i) ids.push_back(std::to_string(i));
    return abstract(std::move(ids), std::move(conflicts));
  }

  Backend backend() const noexcept { return backend_; }
  std::size_t size() const noexcept { return ids_.size(); }
  IdSet all() const { return IdSet::range(size()); }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(AxiomIndex i) const { return ids_.at(i); }

  AxiomIndex index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error("unknown axiom id '" + id + "'");
    return it->second;
  }

  IdSet resolve(const std::vector<std::string>& names) const {
    std::vector<AxiomIndex> out;
    for (const auto& n : names) out.push_back(index_of(n));
    return IdSet(std::move(out));
  }

  std::string describe(const IdSet& s) const {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ",";
      out += id(s[i]);
    }
    return out + "}";
  }

  const std::vector<Formula>& sentences() const noexcept { return k_; }
  const Formula& sentence(AxiomIndex i) const { return k_.at(i); }
  const std::vector<Formula>& background() const noexcept { return b_; }
  const std::vector<Formula>& positive() const noexcept { return p_; }
  const std::vector<Formula>& negative() const noexcept { return n_; }

  const std::vector<IdSet>& conflict_family() const noexcept { return family_; }
  const IdSet& positive_ids() const noexcept { return p_ids_; }
  const IdSet& negative_ids() const noexcept { return n_ids_; }

  // Text shown to a human oracle for a single-axiom question.
  std::string sentence_text(AxiomIndex i) const {
    if (backend_ == Backend::reasoner) return logic::to_string(sentence(i));
    return "component " + id(i) + " is healthy";
  }

  // sentences(S) ∪ B ∪ P (∪ {extra}) is consistent and entails no n ∈ N.
  bool is_valid_set(const IdSet& s, std::optional<AxiomIndex> extra = std::nullopt) const {
    check(s);
    if (extra) check(IdSet{*extra});
    if (backend_ == Backend::abstract) {
      IdSet total = s.united(p_ids_);
      if (extra) total = total.with(*extra);
      if (total.intersects(n_ids_)) return false;
      for (const IdSet& c : family_) {
        if (total.includes(c)) return false;
      }
      return true;
    }
    logic::Reasoner r(assumptions(s, extra));
    if (!r.consistent()) return false;
    for (const Formula& n : n_) {
      if (r.entails(n)) return false;
    }
    return true;
  }

  // sentences(S) ∪ B ∪ P ⊨ sentence of axiom q.
  bool entails_axiom(const IdSet& s, AxiomIndex q) const {
    check(s);
    check(IdSet{q});
    if (backend_ == Backend::abstract) return s.contains(q) || p_ids_.contains(q);
    return logic::entails(assumptions(s, std::nullopt), k_[q]);
  }

  bool is_diagnosis(const IdSet& d) const {
    check(d);
    return is_valid_set(all().minus(d));
  }

  // One-element deletions suffice: diagnosis-hood is monotone over supersets
  // under the weak fault model.
  bool is_minimal_diagnosis(const IdSet& d) const {
    if (!is_diagnosis(d)) return false;
    for (AxiomIndex e : d) {
      if (is_diagnosis(d.without(e))) return false;
    }
    return true;
  }

  // Measurement updates for single-axiom queries. The axiom's sentence
  // (or id) joins P on a positive answer, N on a negative one.
  Dpi with_positive(AxiomIndex q) const {
    check(IdSet{q});
    Dpi out = *this;
    if (backend_ == Backend::abstract) {
      out.p_ids_ = out.p_ids_.with(q);
    } else if (std::find(out.p_.begin(), out.p_.end(), k_[q]) == out.p_.end()) {
      out.p_.push_back(k_[q]);
    }
    return out;
  }

  Dpi with_negative(AxiomIndex q) const {
    check(IdSet{q});
    Dpi out = *this;
    if (backend_ == Backend::abstract) {
      out.n_ids_ = out.n_ids_.with(q);
    } else if (std::find(out.n_.begin(), out.n_.end(), k_[q]) == out.n_.end()) {
      out.n_.push_back(k_[q]);
    }
    return out;
  }

 private:
  Dpi(Backend backend, std::vector<std::string> ids) : backend_(backend), ids_(std::move(ids)) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (ids_[i].empty()) throw Error("empty axiom id");
      if (!index_.emplace(ids_[i], static_cast<AxiomIndex>(i)).second) {
        throw Error("duplicate axiom id '" + ids_[i] + "'");
      }
    }
  }

  void check(const IdSet& s) const {
    if (!s.empty() && s.values().back() >= size()) {
      throw Error("unknown axiom position " + std::to_string(s.values().back()));
    }
  }

  std::vector<Formula> assumptions(const IdSet& s, std::optional<AxiomIndex> extra) const {
    std::vector<Formula> out;
    out.reserve(s.size() + b_.size() + p_.size() + 1);
    for (AxiomIndex i : s) out.push_back(k_[i]);
    if (extra) out.push_back(k_[*extra]);
    out.insert(out.end(), b_.begin(), b_.end());
    out.insert(out.end(), p_.begin(), p_.end());
    return out;
  }

  Backend backend_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, AxiomIndex> index_;
  std::vector<Formula> k_, b_, p_, n_;
  std::vector<IdSet> family_;
  IdSet p_ids_, n_ids_;
};

struct Diagnosis {
  IdSet ids;
  LogProb log_probability;

  double probability() const { return log_probability.linear(); }
};

using Conflict = IdSet;

// Normalized probabilities over a diagnosis list; computed on demand only.
inline std::vector<double> normalized_probabilities(std::span<const Diagnosis> diagnoses) {
  std::vector<LogProb> v;
  v.reserve(diagnoses.size());
  for (const auto& d : diagnoses) v.push_back(d.log_probability);
  return normalize(v);
}

}  // namespace rbfhs
