#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kitaev/correlators.hpp"
#include "kitaev/errors.hpp"
#include "oracles.hpp"

namespace {

using kitaev::CorrelatorConfig;
using kitaev::Couplings;
using kitaev::Displacement;
using kitaev::Exec;
using kitaev::LatticeSize;

TEST(TwoSiteZz, DimerPointIsOne) {
  for (int l : {2, 3, 10, 33}) {
    const auto r = kitaev::two_site_zz(Couplings(0, 0, 1), LatticeSize(l));
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(r.floored_points, 0u);
  }
}

TEST(TwoSiteZz, VanishesAtJzZeroForEvenL) {
  for (int l : {2, 4, 10, 100}) {
    EXPECT_NEAR(kitaev::two_site_zz(Couplings(0.5, 0.5, 0), LatticeSize(l)).value, 0.0, 1e-15)
        << "L=" << l;
  }
}

TEST(TwoSiteZz, MatchesBruteForceSum) {
  EXPECT_NEAR(kitaev::two_site_zz(Couplings(0.25, 0.25, 0.5), LatticeSize(4)).value,
              static_cast<double>(oracle::c2(0.25, 0.25, 0.5, 4)), 1e-15);
  EXPECT_NEAR(kitaev::two_site_zz(Couplings(0.1, 0.5, 0.4), LatticeSize(13)).value,
              static_cast<double>(oracle::c2(0.1, 0.5, 0.4, 13)), 1e-14);
}

TEST(TwoSiteZz, FloorsExactZerosOfTheSpectrum) {
  // f(q) = 1 + e^{i qx} + e^{i qy} vanishes at (2pi/3, -2pi/3) and its mirror.
  const auto r = kitaev::two_site_zz(Couplings(1, 1, 1), LatticeSize(3), CorrelatorConfig{1e-9});
  EXPECT_EQ(r.floored_points, 2u);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(TwoSiteZz, MonotoneAlongTheLine) {
  for (int l : {20, 21}) {
    double previous = -2.0;
    for (int k = 0; k <= 100; ++k) {
      const double c = kitaev::two_site_zz(kitaev::line_point(k / 100.0), LatticeSize(l)).value;
      EXPECT_GE(c, previous) << "L=" << l << " jz=" << k / 100.0;
      EXPECT_LE(std::abs(c), 1.0);
      previous = c;
    }
  }
}

TEST(TwoBondNaive, DimerPointIsOne) {
  for (int l : {3, 4, 6}) {
    const auto r = kitaev::two_bond_zzzz_naive(Couplings(0, 0, 1), LatticeSize(l), {1, 2});
    EXPECT_NEAR(r.c4, 1.0, 1e-14);
    EXPECT_NEAR(r.connected, 0.0, 1e-14);
  }
}

TEST(TwoBondNaive, ZeroDisplacementGivesZero) {
  const auto r = kitaev::two_bond_zzzz_naive(Couplings(0.3, 0.2, 0.5), LatticeSize(5), {0, 0});
  EXPECT_EQ(r.c4, 0.0);
}

TEST(TwoBondNaive, MatchesIndependentDoubleSum) {
  const auto r = kitaev::two_bond_zzzz_naive(Couplings(0.25, 0.25, 0.5), LatticeSize(4), {2, 2});
  EXPECT_NEAR(r.c4, static_cast<double>(oracle::c4_double_sum(0.25, 0.25, 0.5, 4, 2, 2)), 1e-15);
  const auto s = kitaev::two_bond_zzzz_naive(Couplings(0.4, 0.15, 0.45), LatticeSize(5), {1, 3});
  EXPECT_NEAR(s.c4, static_cast<double>(oracle::c4_double_sum(0.4, 0.15, 0.45, 5, 1, 3)), 1e-15);
}

TEST(TwoBondNaive, RefusesLargeLattices) {
  EXPECT_THROW(kitaev::two_bond_zzzz_naive(Couplings(0, 0, 1), LatticeSize(kitaev::kNaiveMaxL + 1),
                                           {1, 1}),
               kitaev::SizeGuardError);
  CorrelatorConfig cfg;
  cfg.allow_large_naive = true;
  const auto r =
      kitaev::two_bond_zzzz_naive(Couplings(0, 0, 1), LatticeSize(kitaev::kNaiveMaxL + 1), {1, 1}, cfg);
  EXPECT_NEAR(r.c4, 1.0, 1e-12);
}

TEST(TwoBondFast, DimerPointIsOne) {
  for (int l : {4, 10, 100}) {
    const auto r = kitaev::two_bond_zzzz_fast(Couplings(0, 0, 1), LatticeSize(l),
                                              kitaev::longest_displacement(LatticeSize(l)));
    EXPECT_NEAR(r.c4, 1.0, 1e-14);
    EXPECT_NEAR(r.connected, 0.0, 1e-14);
    EXPECT_EQ(r.c2, 1.0);
  }
}

TEST(TwoBondFast, ZeroDisplacementGivesZero) {
  const auto r = kitaev::two_bond_zzzz_fast(Couplings(0.3, 0.2, 0.5), LatticeSize(9), {0, 0});
  EXPECT_NEAR(r.c4, 0.0, 1e-15);
}

TEST(TwoBondFast, AgreesWithNaiveExample) {
  const Couplings j(0.3, 0.3, 0.4);
  const auto fast = kitaev::two_bond_zzzz_fast(j, LatticeSize(8), {4, 4});
  const auto naive = kitaev::two_bond_zzzz_naive(j, LatticeSize(8), {4, 4});
  EXPECT_NEAR(fast.c4, naive.c4, 1e-12);
  EXPECT_NEAR(fast.connected, naive.connected, 1e-12);
}

TEST(TwoBondFast, AgreesWithNaiveOnRandomDraws) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coupling(-1.0, 1.0);
  std::uniform_int_distribution<int> size(2, 12);
  for (int draw = 0; draw < 60; ++draw) {
    const Couplings j(coupling(rng), coupling(rng), coupling(rng));
    const int l = size(rng);
    std::uniform_int_distribution<int> disp(-l, 2 * l);
    const Displacement dr{disp(rng), disp(rng)};
    const auto fast = kitaev::two_bond_zzzz_fast(j, LatticeSize(l), dr);
    const auto naive = kitaev::two_bond_zzzz_naive(j, LatticeSize(l), dr);
    EXPECT_NEAR(fast.c4, naive.c4, 1e-12) << "draw " << draw;
    EXPECT_LE(std::abs(fast.c4), 1.0 + 1e-12);
  }
}

TEST(TwoBondFast, EvenUnderDisplacementReversal) {
  const Couplings j(0.2, 0.45, 0.35);
  for (int l : {6, 7}) {
    const auto a = kitaev::two_bond_zzzz_fast(j, LatticeSize(l), {2, 1});
    const auto b = kitaev::two_bond_zzzz_fast(j, LatticeSize(l), {-2, -1});
    const auto c = kitaev::two_bond_zzzz_fast(j, LatticeSize(l), {l - 2, l - 1});
    EXPECT_NEAR(a.c4, b.c4, 1e-15);
    EXPECT_NEAR(a.c4, c.c4, 1e-15);
  }
}

TEST(TwoBondFast, ConnectedPartVanishesNearDimerPoint) {
  double previous = INFINITY;
  for (double jz : {0.9, 0.99, 0.999}) {
    const auto r = kitaev::two_bond_zzzz_fast(kitaev::line_point(jz), LatticeSize(10), {5, 5});
    EXPECT_LT(std::abs(r.connected), previous);
    previous = std::abs(r.connected);
    EXPECT_NEAR(r.c4, r.c2 * r.c2 + r.connected, 1e-15);
  }
  EXPECT_LT(previous, 1e-12);
}

TEST(TwoBondFast, ConnectedPartKeepsRelativePrecision) {
  // At L = 60 deep in the gapped phase c4 - c2^2 is far below the rounding
  // of c4 itself; the direct S_A^2 - S_B^2 evaluation still resolves it.
  const auto r = kitaev::two_bond_zzzz_fast(kitaev::line_point(0.8), LatticeSize(60), {30, 30});
  EXPECT_NE(r.connected, 0.0);
  EXPECT_LT(std::abs(r.connected), 1e-16);
}

TEST(TwoBondFast, IndependentOfWorkerCount) {
  const Couplings j(0.3, 0.25, 0.45);
  const auto ref = kitaev::two_bond_zzzz_fast(j, LatticeSize(90), {45, 45}, {}, Exec{1});
  for (unsigned w : {4u, 8u}) {
    const auto r = kitaev::two_bond_zzzz_fast(j, LatticeSize(90), {45, 45}, {}, Exec{w});
    EXPECT_EQ(r.c4, ref.c4);
    EXPECT_EQ(r.connected, ref.connected);
  }
  const auto naive = kitaev::two_bond_zzzz_naive(j, LatticeSize(12), {6, 6}, {}, Exec{1});
  EXPECT_EQ(kitaev::two_bond_zzzz_naive(j, LatticeSize(12), {6, 6}, {}, Exec{4}).c4, naive.c4);
}

TEST(LongestDisplacement, Examples) {
  auto d = kitaev::longest_displacement(LatticeSize(100));
  EXPECT_EQ(d.d1, 50);
  EXPECT_EQ(d.d2, 50);
  d = kitaev::longest_displacement(LatticeSize(2));
  EXPECT_EQ(d.d1, 1);
  EXPECT_EQ(d.d2, 1);
  d = kitaev::longest_displacement(LatticeSize(7));
  EXPECT_EQ(d.d1, 3);
  EXPECT_EQ(d.d2, 3);
}

}  // namespace
