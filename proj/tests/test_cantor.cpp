#include "oracle.hpp"
#include "tilingobs/cantor.hpp"
#include "tilingobs/setalg.hpp"

#include <gtest/gtest.h>

using namespace tilingobs;

namespace {

Rational r(long n, long d = 1) { return rational(n, d); }

RatioSequence tail_family() { return RatioSequence({}, GeometricTail{r(1, 8), r(1, 2)}); }
RatioSequence third_then_tail() { return RatioSequence({r(1, 3)}, GeometricTail{r(1, 8), r(1, 2)}); }

// Splits every interval [a,b] into [a, a+ξ(b−a)] and [b−ξ(b−a), b].
oracle::RSet oracle_stage(const RatioSequence& xi, std::size_t k) {
  oracle::RSet s = {{{Rational(0)}, {Rational(1)}}};
  for (std::size_t j = 1; j <= k; ++j) {
    oracle::RSet next;
    Rational x = xi.xi(j);
    for (const auto& b : s) {
      Rational len = b.hi[0] - b.lo[0];
      next.push_back({{b.lo[0]}, {b.lo[0] + x * len}});
      next.push_back({{b.hi[0] - x * len}, {b.hi[0]}});
    }
    s = std::move(next);
  }
  return s;
}

BoxSet from_rset(const oracle::RSet& s) {
  std::vector<Box> boxes;
  for (const auto& b : s) boxes.emplace_back(b.lo, b.hi);
  return normalize(BoxSet(1, boxes));
}

RatioSequence random_sequence(std::mt19937& rng, std::size_t len, bool with_tail) {
  std::vector<Rational> prefix;
  for (std::size_t i = 0; i < len; ++i) {
    long den = std::uniform_int_distribution<long>(3, 24)(rng);
    long num = std::uniform_int_distribution<long>(1, (den - 1) / 2)(rng);
    prefix.push_back(rational(num, den));
  }
  if (!with_tail) return RatioSequence(prefix);
  long qd = std::uniform_int_distribution<long>(2, 5)(rng);
  return RatioSequence(prefix, GeometricTail{rational(1, std::uniform_int_distribution<long>(2, 16)(rng)), rational(1, qd)});
}

// ξ_j ∈ (1/3, 1/2) so that d_n < ℓ_n at every stage
RatioSequence random_fat_sequence(std::mt19937& rng, std::size_t len) {
  std::vector<Rational> prefix;
  for (std::size_t i = 0; i < len; ++i) {
    long den = std::uniform_int_distribution<long>(7, 40)(rng);
    long lo = den / 3 + 1, hi = (den - 1) / 2;
    if (lo > hi) hi = lo = 0;
    prefix.push_back(lo == 0 ? rational(2, 5) : rational(std::uniform_int_distribution<long>(lo, hi)(rng), den));
  }
  return RatioSequence(prefix);
}

}  // namespace

TEST(RatioSequence, RejectsRatiosOutsideOpenHalf) {
  EXPECT_THROW(RatioSequence({r(1, 2)}), InputError);
  EXPECT_THROW(RatioSequence({Rational(0)}), InputError);
  EXPECT_THROW(RatioSequence({}, GeometricTail{Rational(2), r(1, 2)}), InputError);
  EXPECT_THROW(RatioSequence({}, GeometricTail{r(1, 8), Rational(1)}), InputError);
  EXPECT_THROW(RatioSequence({}, GeometricTail{r(-1, 8), r(1, 2)}), InputError);
}

TEST(RatioSequence, TailFormula) {
  RatioSequence xi = third_then_tail();
  EXPECT_EQ(xi.xi(1), r(1, 3));
  EXPECT_EQ(xi.xi(2), r(1, 2) * (1 - r(1, 16)));
  EXPECT_EQ(xi.xi(4), r(1, 2) * (1 - r(1, 64)));
  EXPECT_THROW(xi.xi(0), InputError);
  EXPECT_THROW(RatioSequence({r(1, 3)}).xi(2), InputError);
}

TEST(Stage, MiddleThirdStageOne) {
  EXPECT_EQ(stage(RatioSequence::constant(r(1, 3), 1), 1).set, BoxSet::intervals({{0, r(1, 3)}, {r(2, 3), 1}}));
}

TEST(Stage, MiddleThirdStageTwo) {
  CantorStage st = stage(RatioSequence::constant(r(1, 3), 2), 2);
  std::vector<Rational> offsets = st.offsets;
  std::sort(offsets.begin(), offsets.end());
  EXPECT_EQ(offsets, (std::vector<Rational>{0, r(2, 9), r(2, 3), r(8, 9)}));
  EXPECT_EQ(st.gaps, (std::vector<Rational>{r(2, 3), r(2, 9)}));
  EXPECT_EQ(st.cell_length, r(1, 9));
  EXPECT_EQ(st.set.size(), 4u);
}

TEST(Stage, StageZeroIsUnitInterval) { EXPECT_EQ(stage(tail_family(), 0).set, BoxSet::interval(0, 1)); }

TEST(Stage, FiniteSequenceCannotGoFurther) {
  EXPECT_THROW(stage(RatioSequence::constant(r(1, 3), 2), 3), InputError);
}

TEST(Stage, MatchesSplittingOracleAndMeasureFormula) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    RatioSequence xi = random_sequence(rng, 10, trial % 2 == 0);
    for (std::size_t k = 0; k <= 10; ++k) {
      CantorStage st = stage(xi, k);
      ASSERT_EQ(st.set, from_rset(oracle_stage(xi, k)));
      Rational product = 1;
      for (std::size_t j = 1; j <= k; ++j) product *= 2 * xi.xi(j);
      ASSERT_EQ(measure(st.set), product);
      ASSERT_EQ(st.set.size(), std::size_t{1} << k);
    }
  }
}

TEST(MeasureLimit, PrefixOnlyIsExact) {
  Enclosure e = measure_limit(RatioSequence::constant(r(1, 3), 5), r(1, 1000));
  EXPECT_TRUE(e.exact);
  EXPECT_EQ(e.lo, pow(r(2, 3), 5));
  EXPECT_EQ(e.hi, e.lo);
}

TEST(MeasureLimit, TailFamilyInsideSevenEighthsToOne) {
  const Rational tol = r(1, 1000000);
  Enclosure e = measure_limit(tail_family(), tol);
  EXPECT_GE(e.lo, r(7, 8));
  EXPECT_LE(e.hi, 1);
  EXPECT_LE(e.hi - e.lo, tol);
  // 64-term partial product: an upper bound for m(E) within 2^-64 of it
  Rational partial = 1;
  for (std::size_t k = 1; k <= 64; ++k) partial *= 1 - pow(r(1, 2), k + 3);
  EXPECT_LE(e.lo, partial);
  EXPECT_GE(e.hi + pow(r(1, 2), 60), partial);
}

TEST(MeasureLimit, SmallPrefixRatioHalvesTheBound) {
  Enclosure e = measure_limit(RatioSequence({r(1, 5), r(2, 5)}, GeometricTail{r(1, 16), r(1, 2)}), r(1, 1000));
  EXPECT_LE(e.hi, r(1, 2));
}

TEST(MeasureLimit, RejectsNonPositiveTolerance) {
  EXPECT_THROW(measure_limit(tail_family(), Rational(0)), InputError);
}

TEST(TailIndex, TailFamilyIsZero) {
  EXPECT_EQ(tail_index(tail_family()), 0u);
  EXPECT_EQ(certified_tail_measure(tail_family(), 0), r(7, 8));
}

TEST(TailIndex, ThirdPrefixSkipsOneStage) {
  EXPECT_LT(certified_tail_measure(third_then_tail(), 0), r(4, 5));
  EXPECT_EQ(tail_index(third_then_tail()), 1u);
}

TEST(TailIndex, ClassicalCantorHasNoCertificate) {
  EXPECT_THROW(tail_index(RatioSequence::constant(r(1, 3), 8)), InputError);
}

TEST(TailIndex, HeavyTailNeedsLaterIndex) {
  // c = 1/2, q = 1/2: the bound 1 − c q^{k+1}/(1−q) first reaches 4/5 at k = 2
  RatioSequence xi({}, GeometricTail{r(1, 2), r(1, 2)});
  EXPECT_EQ(tail_index(xi), 2u);
}

TEST(DeltaExact, TailFamilyGivesUnitDifference) {
  DeltaExact d = delta_exact(tail_family());
  EXPECT_EQ(d.k, 0u);
  EXPECT_EQ(d.delta, BoxSet::interval(-1, 1));
}

TEST(DeltaExact, ThirdPrefixMatchesStageOne) {
  DeltaExact d = delta_exact(third_then_tail());
  EXPECT_EQ(d.k, 1u);
  BoxSet e1 = stage(third_then_tail(), 1).set;
  EXPECT_EQ(e1, BoxSet::intervals({{0, r(1, 3)}, {r(2, 3), 1}}));
  EXPECT_EQ(d.delta, essential_difference(e1));
  EXPECT_EQ(d.region, e1);
}

TEST(DeltaExact, RegionIsAPackingRegionContainingTheSet) {
  for (const auto& xi : {tail_family(), third_then_tail()}) {
    DeltaExact d = delta_exact(xi);
    BoxSet surrogate = stage(xi, d.k + 3).set;
    Verdict v = obstruction_verdict(surrogate, d.region);
    EXPECT_EQ(v.tag, VerdictTag::NoWeakTilingOfComplement);
  }
}

TEST(DeltaExact, PropagatesMissingTail) {
  EXPECT_THROW(delta_exact(RatioSequence::constant(r(1, 3), 4)), InputError);
}

TEST(OverlapReport, MiddleThirdStageOne) {
  OverlapReport o = overlap_report(RatioSequence::constant(r(1, 3), 1), 1);
  EXPECT_EQ(o.ell, r(1, 3));
  EXPECT_EQ(o.gap, r(1, 3));
  EXPECT_EQ(o.measure_stage, r(2, 3));
  EXPECT_EQ(o.measure_removed, r(1, 3));
  EXPECT_EQ(o.lower_bound, 0);
}

TEST(OverlapReport, TailFamilyStageThree) {
  OverlapReport o = overlap_report(tail_family(), 3);
  EXPECT_GE(o.lower_bound, r(2, 5));
  EXPECT_LE(o.lower_bound, r(1, 2));
}

TEST(OverlapReport, RatioIdentityOnRandomSequences) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    RatioSequence xi = random_sequence(rng, 6, false);
    for (std::size_t n = 1; n <= 6; ++n) {
      OverlapReport o = overlap_report(xi, n);
      Rational x = xi.xi(n);
      ASSERT_EQ(o.gap / o.ell, (1 - 2 * x) / x);
      ASSERT_EQ(o.lower_bound / o.measure_stage, r(1, 2) - o.gap / (2 * o.ell));
      auto prev = oracle_stage(xi, n - 1), cur = oracle_stage(xi, n);
      ASSERT_EQ(o.measure_removed, oracle::difference(prev, cur, 1));
      ASSERT_EQ(o.measure_removed, o.gap / (2 * o.ell) * o.measure_stage);
    }
  }
}

TEST(OverlapReport, RejectsStageZero) { EXPECT_THROW(overlap_report(tail_family(), 0), InputError); }

TEST(CrucialInequality, ZeroShiftHasZeroLeftSide) {
  CrucialInequality c = crucial_inequality_check(tail_family(), 2, Rational(0));
  EXPECT_EQ(c.lhs, 0);
  EXPECT_TRUE(c.holds);
}

TEST(CrucialInequality, TwoFifthsByHand) {
  // E1 = [0,2/5] ∪ [3/5,1]; E1 + 1/5 meets A1 in [2/5,3/5] and E1 in [1/5,2/5] ∪ [4/5,1]
  CrucialInequality c = crucial_inequality_check(RatioSequence::constant(r(2, 5), 1), 1, r(1, 5));
  EXPECT_EQ(c.lhs, r(1, 5));
  EXPECT_EQ(c.rhs, r(2, 5));
  EXPECT_TRUE(c.holds);
}

TEST(CrucialInequality, RejectsThinStages) {
  EXPECT_THROW(crucial_inequality_check(RatioSequence::constant(r(1, 3), 1), 1, r(1, 5)), InputError);
  EXPECT_THROW(crucial_inequality_check(RatioSequence::constant(r(1, 4), 1), 1, r(1, 5)), InputError);
}

TEST(CrucialInequality, RandomShiftsAgainstOracle) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    RatioSequence xi = random_fat_sequence(rng, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto prev = oracle_stage(xi, n - 1), cur = oracle_stage(xi, n);
      Rational ell = xi.xi(1);
      for (std::size_t j = 2; j <= n; ++j) ell *= xi.xi(j);
      Rational gap = ell / xi.xi(n) * (1 - 2 * xi.xi(n));
      for (int k = 0; k < 25; ++k) {
        Rational t = rational(std::uniform_int_distribution<long>(-1999, 1999)(rng), 1000);
        CrucialInequality c = crucial_inequality_check(xi, n, t);
        auto shifted = oracle::shift(cur, {t});
        Rational in_removed =
            oracle::measure_where({shifted, prev, cur}, 1, [](const std::vector<bool>& p) { return p[0] && p[1] && !p[2]; });
        ASSERT_EQ(c.lhs, (ell - gap) / gap * in_removed);
        ASSERT_EQ(c.rhs, oracle::measure_where({shifted, cur}, 1, [](const std::vector<bool>& p) { return p[0] && p[1]; }));
        ASSERT_TRUE(c.holds);
      }
    }
  }
}

TEST(Cantor2d, FourByFour) {
  auto cells = cantor2d_cells({4}, 1);
  EXPECT_EQ(cells.size(), 15u);
  for (const auto& c : cells) EXPECT_EQ(c.volume(), r(1, 16));
  BoxSet removed = set_difference(BoxSet(2, {Box::rect(0, 0, 1, 1)}), cantor2d_stage({4}, 1));
  EXPECT_EQ(removed, BoxSet(2, {Box::rect(r(1, 4), r(1, 4), r(1, 2), r(1, 2))}));
  EXPECT_EQ(measure(cantor2d_stage({4}, 1)), r(15, 16));
}

TEST(Cantor2d, TwoStages) { EXPECT_EQ(measure(cantor2d_stage({4, 8}, 2)), r(15, 16) * r(63, 64)); }

TEST(Cantor2d, StageZero) { EXPECT_EQ(cantor2d_stage({5}, 0), BoxSet(2, {Box::rect(0, 0, 1, 1)})); }

TEST(Cantor2d, OddFactorRemovesTrueCentre) {
  BoxSet removed = set_difference(BoxSet(2, {Box::rect(0, 0, 1, 1)}), cantor2d_stage({5}, 1));
  EXPECT_EQ(removed, BoxSet(2, {Box::rect(r(2, 5), r(2, 5), r(3, 5), r(3, 5))}));
}

TEST(Cantor2d, Errors) {
  EXPECT_THROW(cantor2d_cells({3}, 1), InputError);
  EXPECT_THROW(cantor2d_cells({4}, 2), InputError);
}

TEST(Cantor2d, ProductLaw) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> m;
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    Rational expected = 1;
    for (std::size_t j = 0; j < n; ++j) {
      m.push_back(std::uniform_int_distribution<long>(4, 7)(rng));
      expected *= 1 - rational(1, m.back() * m.back());
    }
    ASSERT_EQ(measure(cantor2d_stage(m, n)), expected);
  }
}

TEST(FatCantorTiler, OneLevel) {
  auto t = fat_cantor_tiler(1, r(1, 2));
  ASSERT_EQ(t.pieces.size(), 1u);
  EXPECT_GE(measure(t.pieces[0]), r(1, 2));
  EXPECT_EQ(t.residual, r(1, 2));
}

TEST(FatCantorTiler, ThreeLevelsResidual) {
  auto t = fat_cantor_tiler(3, r(1, 2));
  EXPECT_LE(t.residual, r(1, 8));
  Rational total = 0;
  for (const auto& p : t.pieces) total += measure(p);
  EXPECT_EQ(total, 1 - t.residual);
}

TEST(FatCantorTiler, PiecesDisjointInsideUnitInterval) {
  auto t = fat_cantor_tiler(3, r(1, 3), 2);
  for (std::size_t i = 0; i < t.pieces.size(); ++i) {
    EXPECT_TRUE(is_subset(t.pieces[i], BoxSet::interval(0, 1)));
    for (std::size_t j = i + 1; j < t.pieces.size(); ++j)
      EXPECT_EQ(measure(set_intersection(t.pieces[i], t.pieces[j])), 0);
  }
}

TEST(FatCantorTiler, Errors) {
  EXPECT_THROW(fat_cantor_tiler(0, r(1, 2)), InputError);
  EXPECT_THROW(fat_cantor_tiler(2, Rational(1)), InputError);
  EXPECT_THROW(fat_cantor_tiler(2, Rational(0)), InputError);
}

TEST(Properties, Nesting) {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    RatioSequence xi = random_sequence(rng, 10, false);
    for (std::size_t k = 0; k < 10; ++k) ASSERT_TRUE(is_subset(stage(xi, k + 1).set, stage(xi, k).set));
  }
}

TEST(Properties, StructureRecursion) {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    RatioSequence xi = random_sequence(rng, 8, trial % 2 == 1);
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
    std::size_t j = std::uniform_int_distribution<std::size_t>(0, 8 - k)(rng);
    CantorStage head = stage(xi, k);
    BoxSet inner = scale(stage(xi.shift(k), j).set, head.cell_length);
    BoxSet rebuilt(1);
    for (const auto& t : head.offsets) rebuilt = set_union(rebuilt, translate(inner, {t}));
    ASSERT_EQ(stage(xi, k + j).set, rebuilt) << trial;
  }
}

TEST(Properties, DeltaRecursion) {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    RatioSequence xi = random_sequence(rng, 8, trial % 2 == 0);
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    std::size_t j = std::uniform_int_distribution<std::size_t>(0, 8 - k)(rng);
    CantorStage head = stage(xi, k);
    BoxSet inner = scale(essential_difference(stage(xi.shift(k), j).set), head.cell_length);
    std::vector<Rational> diffs;
    for (const auto& a : head.offsets)
      for (const auto& b : head.offsets) diffs.push_back(a - b);
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    std::vector<Box> boxes;
    for (const auto& d : diffs)
      for (const auto& b : inner.boxes()) boxes.push_back(Box::interval(b.lo[0] + d, b.hi[0] + d));
    ASSERT_EQ(essential_difference(stage(xi, k + j).set), normalize(BoxSet(1, boxes))) << trial;
  }
}

TEST(Properties, DeltaStableBeyondCertifiedIndex) {
  std::mt19937 rng(61);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 15; ++trial) {
    RatioSequence xi = random_sequence(rng, std::uniform_int_distribution<std::size_t>(0, 3)(rng), true);
    std::size_t k;
    try {
      k = tail_index(xi);
    } catch (const InputError&) {
      continue;
    }
    if (k + 3 > 10) continue;
    DeltaExact d = delta_exact(xi);
    for (std::size_t kk = k; kk <= k + 3; ++kk) ASSERT_EQ(essential_difference(stage(xi, kk).set), d.delta);
    ++checked;
  }
  EXPECT_GE(checked, 5);
}
