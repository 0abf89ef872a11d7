#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rbfhs/dpi.hpp"

namespace rbfhs {

struct ConflictOutcome {
  enum class Kind { empty_conflict, no_conflict, minimal };

  Kind kind;
  Conflict conflict;  // set only for Kind::minimal

  static ConflictOutcome empty() { return {Kind::empty_conflict, {}}; }
  static ConflictOutcome none() { return {Kind::no_conflict, {}}; }
  static ConflictOutcome minimal(Conflict c) { return {Kind::minimal, std::move(c)}; }

  bool is_minimal() const noexcept { return kind == Kind::minimal; }
};

// Validity predicate over axiom position sets, counting its invocations.
class ValidityCheck {
 public:
  explicit ValidityCheck(const Dpi& dpi) : dpi_(&dpi) {}

  bool operator()(const IdSet& s) {
    ++calls_;
    return dpi_->is_valid_set(s);
  }

  std::uint64_t calls() const noexcept { return calls_; }

 private:
  const Dpi* dpi_;
  std::uint64_t calls_ = 0;
};

namespace detail {

// `background` is invalid-free on entry unless `changed` says the last
// partition was just added to it.
template <typename Valid>
IdSet quickxplain_rec(const IdSet& background, bool changed, std::span<const AxiomIndex> candidates,
                      Valid& valid) {
  if (changed && !valid(background)) return {};
  if (candidates.size() == 1) return IdSet{candidates.front()};
  const std::size_t split = (candidates.size() + 1) / 2;
  auto first = candidates.first(split);
  auto second = candidates.subspan(split);
  IdSet first_set(std::vector<AxiomIndex>(first.begin(), first.end()));
  IdSet from_second = quickxplain_rec(background.united(first_set), !first.empty(), second, valid);
  IdSet from_first = quickxplain_rec(background.united(from_second), !from_second.empty(), first, valid);
  return from_first.united(from_second);
}

}  // namespace detail

// Junker's QuickXplain. Requires background valid and background ∪ candidates
// invalid; returns a subset-minimal C ⊆ candidates with background ∪ C
// invalid. Candidates earlier in the list are preferred.
template <typename Valid>
Conflict quickxplain(const IdSet& background, std::span<const AxiomIndex> candidates, Valid& valid) {
  if (candidates.empty()) throw Error("quickxplain: empty candidate list");
  IdSet all_candidates(std::vector<AxiomIndex>(candidates.begin(), candidates.end()));
  if (!valid(background)) throw Error("quickxplain: background is already invalid");
  if (valid(background.united(all_candidates))) throw Error("quickxplain: candidates contain no conflict");
  return detail::quickxplain_rec(background, false, candidates, valid);
}

// Same, without the precondition probes; for callers that established them.
template <typename Valid>
Conflict quickxplain_unchecked(const IdSet& background, std::span<const AxiomIndex> candidates, Valid& valid) {
  return detail::quickxplain_rec(background, false, candidates, valid);
}

// Minimal conflict of <K \ excluded, B, P, N>, candidates in K order.
template <typename Valid>
ConflictOutcome find_min_conflict(const Dpi& dpi, const IdSet& excluded, Valid& valid) {
  IdSet candidates = dpi.all().minus(excluded);
  if (valid(candidates)) return ConflictOutcome::none();
  if (!valid(IdSet{})) return ConflictOutcome::empty();
  return ConflictOutcome::minimal(quickxplain_unchecked(IdSet{}, candidates.view(), valid));
}

inline ConflictOutcome find_min_conflict(const Dpi& dpi, const IdSet& excluded = {}) {
  ValidityCheck valid(dpi);
  return find_min_conflict(dpi, excluded, valid);
}

// Conflict source used by the searches. QuickXplain is the default. The
// family scan applies to abstract DPIs only and returns the first attached
// conflict (in declaration order) disjoint from the excluded set; once
// measurements exist the attached conflicts need not be minimal any more, so
// it falls back to QuickXplain.
enum class ConflictStrategy { quickxplain, family_scan };

template <typename Valid>
ConflictOutcome find_min_conflict(const Dpi& dpi, const IdSet& excluded, Valid& valid, ConflictStrategy strategy) {
  if (strategy == ConflictStrategy::family_scan && dpi.backend() != Backend::abstract) {
    throw Error("family scan requires an abstract DPI");
  }
  if (strategy == ConflictStrategy::quickxplain || !dpi.positive_ids().empty() || !dpi.negative_ids().empty()) {
    return find_min_conflict(dpi, excluded, valid);
  }
  IdSet remaining = dpi.all().minus(excluded);
  if (valid(remaining)) return ConflictOutcome::none();
  if (!valid(IdSet{})) return ConflictOutcome::empty();
  for (const IdSet& c : dpi.conflict_family()) {
    if (!c.intersects(excluded)) return ConflictOutcome::minimal(c);
  }
  throw Error("family scan: invalid set without an attached conflict");
}

}  // namespace rbfhs
