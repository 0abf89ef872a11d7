#pragma once

#include <map>
#include <string>
#include <vector>

#include "rbfhs/rbfhs.hpp"

namespace rbfhs::test {

inline std::string fixture(const std::string& name) { return std::string(RBFHS_FIXTURES) + "/" + name; }

inline bool eval(const logic::Formula& f, const std::map<std::string, bool>& v) {
  using logic::Connective;
  switch (f.kind()) {
    case Connective::truth: return true;
    case Connective::falsity: return false;
    case Connective::atom: return v.at(f.name());
    case Connective::negation: return !eval(f.operand(), v);
    case Connective::conjunction: return eval(f.lhs(), v) && eval(f.rhs(), v);
    case Connective::disjunction: return eval(f.lhs(), v) || eval(f.rhs(), v);
    case Connective::implication: return !eval(f.lhs(), v) || eval(f.rhs(), v);
    case Connective::biconditional: return eval(f.lhs(), v) == eval(f.rhs(), v);
  }
  return false;
}

inline std::vector<std::string> atom_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

// Every assignment of `atoms`, as maps.
inline std::vector<std::map<std::string, bool>> assignments(const std::vector<std::string>& atoms) {
  std::vector<std::map<std::string, bool>> out;
  for (std::uint32_t bits = 0; bits < (1u << atoms.size()); ++bits) {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = (bits >> i) & 1u;
    out.push_back(std::move(v));
  }
  return out;
}

inline logic::Formula random_formula(SeededRng& rng, const std::vector<std::string>& atoms, int depth) {
  using logic::Connective;
  using logic::Formula;
  if (depth == 0 || rng.between(0, 3) == 0) {
    std::uint64_t pick = rng.between(0, atoms.size() + 1);
    if (pick == atoms.size()) return rng.between(0, 1) ? Formula::truth() : Formula::falsity();
    if (pick > atoms.size()) return Formula::negation(Formula::atom(atoms[rng.between(0, atoms.size() - 1)]));
    return Formula::atom(atoms[pick]);
  }
  switch (rng.between(0, 4)) {
    case 0: return Formula::negation(random_formula(rng, atoms, depth - 1));
    case 1: return Formula::conjunction(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 2: return Formula::disjunction(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 3: return Formula::implication(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default:
      return Formula::biconditional(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

// Random propositional DPI: `axioms` sentences over `atoms` atoms, with an
// optional negative test case.
inline Dpi random_propositional_dpi(std::size_t axioms, std::size_t atoms, std::uint64_t seed) {
  SeededRng rng(seed);
  auto names = atom_names(atoms);
  std::vector<std::string> ids;
  std::vector<logic::Formula> k;
  for (std::size_t i = 0; i < axioms; ++i) {
    ids.push_back("ax" + std::to_string(i + 1));
    k.push_back(random_formula(rng, names, 2));
  }
  std::vector<logic::Formula> n;
  if (rng.between(0, 1)) n.push_back(random_formula(rng, names, 1));
  return Dpi::reasoner(std::move(ids), std::move(k), {}, {}, std::move(n));
}

inline std::vector<IdSet> ids_of(const std::vector<Diagnosis>& ds) {
  std::vector<IdSet> out;
  for (const auto& d : ds) out.push_back(d.ids);
  return out;
}

inline std::vector<IdSet> sorted(std::vector<IdSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline Dpi seven_components() {
  return Dpi::abstract(7, {IdSet{0, 1, 4}, IdSet{1, 3, 5}, IdSet{0, 2, 3}, IdSet{0, 4, 5, 6}});
}

inline FaultProbabilities seven_components_pr() {
  return FaultProbabilities{{.26, .18, .21, .41, .18, .40, .18}, true};
}

inline Dpi five_axioms() { return load_dpi_file(fixture("five_axioms.dpi")).dpi; }

}  // namespace rbfhs::test
