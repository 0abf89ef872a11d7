#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

namespace rbfhs::test {
namespace {

bool is_minimal_conflict(const Dpi& dpi, const IdSet& c) {
  if (dpi.is_valid_set(c)) return false;
  for (AxiomIndex a : c) {
    if (!dpi.is_valid_set(c.without(a))) return false;
  }
  return true;
}

TEST(QuickXplain, SevenComponentsRootConflict) {
  ConflictOutcome out = find_min_conflict(seven_components());
  ASSERT_TRUE(out.is_minimal());
  EXPECT_EQ(out.conflict, (IdSet{0, 2, 3}));
}

TEST(QuickXplain, FiveAxiomsConflicts) {
  Dpi dpi = five_axioms();
  ConflictOutcome out = find_min_conflict(dpi);
  ASSERT_TRUE(out.is_minimal());
  EXPECT_EQ(out.conflict, (IdSet{0, 1}));
  ConflictOutcome without_first = find_min_conflict(dpi, IdSet{0});
  ASSERT_TRUE(without_first.is_minimal());
  EXPECT_EQ(without_first.conflict, (IdSet{1, 2, 3}));
  EXPECT_EQ(find_min_conflict(dpi, IdSet{0, 2}).kind, ConflictOutcome::Kind::no_conflict);
}

TEST(QuickXplain, TrivialOutcomes) {
  Dpi consistent = Dpi::abstract(3, {});
  EXPECT_EQ(find_min_conflict(consistent).kind, ConflictOutcome::Kind::no_conflict);
  Dpi broken = Dpi::reasoner({"ax1"}, {logic::parse_formula("A")}, {logic::parse_formula("false")});
  EXPECT_EQ(find_min_conflict(broken).kind, ConflictOutcome::Kind::empty_conflict);
}

TEST(QuickXplain, CheckedVersionValidatesPreconditions) {
  Dpi dpi = seven_components();
  ValidityCheck valid(dpi);
  std::vector<AxiomIndex> none;
  EXPECT_THROW(quickxplain(IdSet{}, none, valid), Error);
  std::vector<AxiomIndex> harmless{2};
  EXPECT_THROW(quickxplain(IdSet{}, harmless, valid), Error);
  std::vector<AxiomIndex> rest{3};
  EXPECT_THROW(quickxplain(IdSet{0, 1, 4}, rest, valid), Error);
  std::vector<AxiomIndex> all{0, 1, 2, 3, 4, 5, 6};
  EXPECT_EQ(quickxplain(IdSet{}, all, valid), (IdSet{0, 2, 3}));
}

TEST(QuickXplain, PrefersEarlierCandidates) {
  Dpi dpi = seven_components();
  ValidityCheck valid(dpi);
  std::vector<AxiomIndex> reversed{6, 5, 4, 3, 2, 1, 0};
  Conflict c = quickxplain(IdSet{}, reversed, valid);
  EXPECT_TRUE(is_minimal_conflict(dpi, c));
  // the first prefix 6,5,4,3,2,1 already holds {1,3,5}; every other conflict needs 0
  EXPECT_EQ(c, (IdSet{1, 3, 5}));
}

// Junker's bound on validity checks: 2k log2(n/k) + 2k for a conflict of
// size k among n candidates.
double call_bound(std::size_t k, std::size_t n) {
  const double kk = static_cast<double>(k);
  return 2.0 * kk * std::log2(static_cast<double>(n) / kk) + 2.0 * kk;
}

TEST(QuickXplain, MinimalityAndCallBoundOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const std::size_t n = 4 + seed % 13;
    Dpi dpi = gen_random_dpi(n, 1 + seed % 6, std::min<std::size_t>(n, 5), seed);
    ValidityCheck valid(dpi);
    IdSet all = dpi.all();
    if (valid(all)) continue;
    const std::uint64_t before = valid.calls();
    Conflict c = quickxplain_unchecked(IdSet{}, all.view(), valid);
    const std::uint64_t calls = valid.calls() - before;
    EXPECT_TRUE(is_minimal_conflict(dpi, c)) << "seed " << seed;
    EXPECT_LE(static_cast<double>(calls), call_bound(c.size(), n)) << "seed " << seed;
  }
}

TEST(QuickXplain, MinimalOnPropositionalInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Dpi dpi = random_propositional_dpi(7, 4, seed);
    ConflictOutcome out = find_min_conflict(dpi);
    if (!out.is_minimal()) continue;
    EXPECT_TRUE(is_minimal_conflict(dpi, out.conflict)) << "seed " << seed;
  }
}

TEST(FamilyScan, ReturnsFirstAttachedConflict) {
  Dpi dpi = seven_components();
  ValidityCheck valid(dpi);
  ConflictOutcome root = find_min_conflict(dpi, IdSet{}, valid, ConflictStrategy::family_scan);
  EXPECT_EQ(root.conflict, (IdSet{0, 1, 4}));
  ConflictOutcome after = find_min_conflict(dpi, IdSet{0}, valid, ConflictStrategy::family_scan);
  EXPECT_EQ(after.conflict, (IdSet{1, 3, 5}));
  EXPECT_EQ(find_min_conflict(dpi, IdSet{0, 3}, valid, ConflictStrategy::family_scan).kind,
            ConflictOutcome::Kind::no_conflict);
}

TEST(FamilyScan, RequiresAbstractBackend) {
  Dpi dpi = five_axioms();
  ValidityCheck valid(dpi);
  EXPECT_THROW(find_min_conflict(dpi, IdSet{}, valid, ConflictStrategy::family_scan), Error);
}

TEST(FamilyScan, FallsBackOnceMeasurementsExist) {
  Dpi dpi = seven_components().with_positive(0);
  ValidityCheck valid(dpi);
  ConflictOutcome out = find_min_conflict(dpi, IdSet{}, valid, ConflictStrategy::family_scan);
  ASSERT_TRUE(out.is_minimal());
  EXPECT_TRUE(is_minimal_conflict(dpi, out.conflict));
  EXPECT_FALSE(out.conflict.contains(0));
}

}  // namespace
}  // namespace rbfhs::test
