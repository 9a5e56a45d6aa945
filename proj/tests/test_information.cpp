#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "kitaev/errors.hpp"
#include "kitaev/information.hpp"
#include "oracles.hpp"

namespace {

using boost::multiprecision::cpp_bin_float_50;

// -x log2 x in 50 digits.
cpp_bin_float_50 h50(const cpp_bin_float_50& x) {
  if (x <= 0) return 0;
  return -x * log(x) / log(cpp_bin_float_50(2));
}

cpp_bin_float_50 mi_two_bond_50(const cpp_bin_float_50& c2, const cpp_bin_float_50& c4) {
  return 4 * h50((1 + c2) / 4) + 4 * h50((1 - c2) / 4) - 8 * h50((1 - c4) / 16) -
         4 * h50((1 - 2 * c2 + c4) / 16) - 4 * h50((1 + 2 * c2 + c4) / 16);
}

// rho = (1/16) sum over alpha, beta in {0, z} of <...> sigma^a sigma^a sigma^b sigma^b,
// assembled from Kronecker products.
Eigen::Matrix<double, 16, 16> assembled_two_bond_rdm(double c2, double c4) {
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d z;
  z << 1, 0, 0, -1;
  auto kron4 = [](const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, const Eigen::Matrix2d& c,
                  const Eigen::Matrix2d& d) {
    Eigen::Matrix<double, 16, 16> m;
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        m(i, j) = a(i >> 3 & 1, j >> 3 & 1) * b(i >> 2 & 1, j >> 2 & 1) *
                  c(i >> 1 & 1, j >> 1 & 1) * d(i & 1, j & 1);
      }
    }
    return m;
  };
  return (kron4(id, id, id, id) + c2 * kron4(z, z, id, id) + c2 * kron4(id, id, z, z) +
          c4 * kron4(z, z, z, z)) /
         16.0;
}

std::vector<double> expand(const kitaev::RdmSpectrum& s) {
  std::vector<double> v;
  for (const auto& e : s.entries) v.insert(v.end(), e.multiplicity, e.value);
  std::sort(v.begin(), v.end());
  return v;
}

TEST(EntropyTerm, Examples) {
  EXPECT_EQ(kitaev::entropy_term(0.0), 0.0);
  EXPECT_EQ(kitaev::entropy_term(1.0), 0.0);
  EXPECT_DOUBLE_EQ(kitaev::entropy_term(0.5), 0.5);
  EXPECT_DOUBLE_EQ(kitaev::entropy_term(1.0 / 16), 0.25);
}

TEST(EntropyTerm, SlackAndErrors) {
  EXPECT_EQ(kitaev::entropy_term(-1e-13), 0.0);
  EXPECT_EQ(kitaev::entropy_term(1 + 1e-13), 0.0);
  EXPECT_THROW(kitaev::entropy_term(-1e-9), kitaev::DomainError);
  EXPECT_THROW(kitaev::entropy_term(1.01), kitaev::DomainError);
  EXPECT_THROW(kitaev::entropy_term(NAN), kitaev::DomainError);
}

TEST(TwoSiteRdm, Examples) {
  auto r = kitaev::two_site_rdm(1.0);
  EXPECT_EQ(r.dim, 4);
  EXPECT_EQ(r.diagonal, (std::vector<double>{0.5, 0.0, 0.0, 0.5}));
  r = kitaev::two_site_rdm(0.0);
  EXPECT_EQ(r.diagonal, (std::vector<double>{0.25, 0.25, 0.25, 0.25}));
  r = kitaev::two_site_rdm(0.5);
  EXPECT_EQ(r.diagonal, (std::vector<double>{0.375, 0.125, 0.125, 0.375}));
  EXPECT_DOUBLE_EQ(r.trace(), 1.0);
}

TEST(TwoSiteRdm, RejectsUnphysicalCorrelator) {
  EXPECT_THROW(kitaev::two_site_rdm(1.0 + 1e-9), kitaev::DomainError);
  EXPECT_THROW(kitaev::two_site_rdm(-1.5), kitaev::DomainError);
  EXPECT_NO_THROW(kitaev::two_site_rdm(1.0 + 1e-13));
}

TEST(MutualInfoTwoSite, Examples) {
  EXPECT_EQ(kitaev::mutual_info_two_site(0.0), 0.0);
  EXPECT_DOUBLE_EQ(kitaev::mutual_info_two_site(1.0), 1.0);
  EXPECT_NEAR(kitaev::mutual_info_two_site(0.5), static_cast<double>(oracle::mi_two_site(0.5L)),
              1e-15);
  EXPECT_NEAR(kitaev::mutual_info_two_site(0.5), 0.188722, 1e-6);
}

TEST(MutualInfoTwoSite, EvenAndIncreasingInMagnitude) {
  double previous = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const double c = k / 100.0;
    const double v = kitaev::mutual_info_two_site(c);
    EXPECT_DOUBLE_EQ(v, kitaev::mutual_info_two_site(-c));
    if (k > 0) {
      EXPECT_GT(v, previous);
    }
    EXPECT_GE(v, 0.0);
    previous = v;
  }
}

TEST(MutualInfoTwoSite, EqualsEntropyDifference) {
  for (double c : {-0.7, 0.1, 0.9}) {
    EXPECT_NEAR(kitaev::mutual_info_two_site(c), 2.0 - kitaev::two_site_rdm(c).entropy(), 1e-14);
  }
}

TEST(TwoBondSpectrum, Examples) {
  auto s = kitaev::two_bond_rdm_spectrum(0.0, 0.0);
  for (double v : expand(s)) EXPECT_DOUBLE_EQ(v, 1.0 / 16);
  EXPECT_EQ(s.dimension(), 16);

  s = kitaev::two_bond_rdm_spectrum(1.0, 1.0);
  ASSERT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0].multiplicity, 8);
  EXPECT_EQ(s.entries[0].value, 0.0);
  EXPECT_EQ(s.entries[1].value, 0.0);
  EXPECT_EQ(s.entries[2].value, 0.25);

  s = kitaev::two_bond_rdm_spectrum(0.6, 0.36);
  EXPECT_NEAR(s.entries[0].value, 0.04, 1e-15);
  EXPECT_NEAR(s.entries[1].value, 0.01, 1e-15);
  EXPECT_NEAR(s.entries[2].value, 0.16, 1e-15);
  EXPECT_EQ(s.entries[1].multiplicity, 4);
  EXPECT_EQ(s.entries[2].multiplicity, 4);
  EXPECT_NEAR(s.trace(), 1.0, 1e-15);
}

TEST(TwoBondSpectrum, RejectsUnphysicalPair) {
  EXPECT_THROW(kitaev::two_bond_rdm_spectrum(0.9, 0.0), kitaev::DomainError);
  EXPECT_THROW(kitaev::two_bond_rdm_spectrum(0.0, 1.1), kitaev::DomainError);
  try {
    kitaev::two_bond_rdm_spectrum(0.9, 0.0);
  } catch (const kitaev::DomainError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("0.9"), std::string::npos) << msg;
  }
}

TEST(TwoBondSpectrum, MatchesAssembledMatrixEigendecomposition) {
  for (double c2 = -0.95; c2 <= 0.95; c2 += 0.19) {
    for (double c4 = -1.0; c4 <= 1.0; c4 += 0.125) {
      if (1 - 2 * std::abs(c2) + c4 < 0) continue;
      const auto rho = assembled_two_bond_rdm(c2, c4);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 16, 16>> solver(rho);
      std::vector<double> numeric(solver.eigenvalues().data(), solver.eigenvalues().data() + 16);
      const auto closed = expand(kitaev::two_bond_rdm_spectrum(c2, c4));
      ASSERT_EQ(closed.size(), 16u);
      for (int i = 0; i < 16; ++i) EXPECT_NEAR(closed[i], numeric[i], 1e-10);

      double s_numeric = 0.0;
      for (double v : numeric) s_numeric += oracle::h(std::max(v, 0.0));
      EXPECT_NEAR(kitaev::two_bond_rdm_spectrum(c2, c4).entropy(), s_numeric, 1e-10);

      const auto diag = kitaev::two_bond_rdm(c2, c4);
      ASSERT_EQ(diag.dim, 16);
      for (int i = 0; i < 16; ++i) EXPECT_NEAR(diag.diagonal[i], rho(i, i), 1e-15);
      EXPECT_NEAR(diag.entropy(), s_numeric, 1e-10);
    }
  }
}

TEST(MutualInfoTwoBond, Examples) {
  EXPECT_NEAR(kitaev::mutual_info_two_bond(0.0, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(kitaev::mutual_info_two_bond(1.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(kitaev::mutual_info_two_bond(0.6, 0.36), 0.0, 1e-14);
}

TEST(MutualInfoTwoBond, ZeroForUncorrelatedBonds) {
  for (double c = -1.0; c <= 1.0; c += 0.05) {
    EXPECT_NEAR(kitaev::mutual_info_two_bond(c, c * c), 0.0, 1e-14);
  }
}

TEST(MutualInfoTwoBond, MatchesLongDoubleFormula) {
  for (double c2 : {-0.4, 0.2, 0.7}) {
    for (double c4 : {0.05, 0.3, 0.6}) {
      if (1 - 2 * std::abs(c2) + c4 < 0) continue;
      EXPECT_NEAR(kitaev::mutual_info_two_bond(c2, c4),
                  static_cast<double>(oracle::mi_two_bond(c2, c4)), 1e-14);
    }
  }
}

TEST(MutualInfo, NonnegativeOverThePhysicalRegion) {
  for (int a = -40; a <= 40; ++a) {
    const double c2 = a / 40.0;
    EXPECT_GE(kitaev::mutual_info_two_site(c2), 0.0);
    for (int b = -40; b <= 40; ++b) {
      const double c4 = b / 40.0;
      if (1 - 2 * std::abs(c2) + c4 < 0) continue;
      EXPECT_GE(kitaev::mutual_info_two_bond(c2, c4), -1e-14) << c2 << " " << c4;
      EXPECT_GE(kitaev::mutual_info_two_bond_connected(c2, c4 - c2 * c2), 0.0) << c2 << " " << c4;
    }
  }
}

TEST(MutualInfoConnected, ZeroWithoutConnectedPart) {
  for (double c2 : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
    EXPECT_EQ(kitaev::mutual_info_two_bond_connected(c2, 0.0), 0.0);
  }
}

TEST(MutualInfoConnected, TinyConnectedPartAgainstExtendedPrecision) {
  for (double c4c : {1e-10, -1e-10, 1e-14, 3e-7}) {
    const cpp_bin_float_50 c2 = 0.5;
    const cpp_bin_float_50 c4 = c2 * c2 + cpp_bin_float_50(c4c);
    const double reference = static_cast<double>(mi_two_bond_50(c2, c4));
    const double value = kitaev::mutual_info_two_bond_connected(0.5, c4c);
    EXPECT_NEAR(value, reference, 1e-6 * reference) << "c4c=" << c4c;
  }
}

TEST(MutualInfoConnected, SeriesAndExactPathsAgreeAtTheCrossover) {
  EXPECT_NEAR(kitaev::detail::mutual_info_connected_series(0.5, 1e-3),
              kitaev::detail::mutual_info_connected_exact(0.5, 1e-3), 1e-9);
  // The cell with the smallest product is P_- P_- = 1/16 at c2 = 0.5.
  const double at_crossover = kitaev::detail::kConnectedSeriesCrossover * 4.0 / 16.0;
  EXPECT_NEAR(kitaev::detail::mutual_info_connected_series(0.5, at_crossover),
              kitaev::detail::mutual_info_connected_exact(0.5, at_crossover), 1e-12);
}

TEST(MutualInfoConnected, AgreesWithDirectFormulaAcrossCrossover) {
  for (double c2 : {-0.8, -0.2, 0.0, 0.5, 0.9}) {
    for (double c4c = 1e-8; c4c < 0.02; c4c *= 1.7) {
      for (double sign : {1.0, -1.0}) {
        const double cc = sign * c4c;
        const double c4 = c2 * c2 + cc;
        if (1 - 2 * std::abs(c2) + c4 < 0 || c4 > 1) continue;
        const double direct = static_cast<double>(
            mi_two_bond_50(cpp_bin_float_50(c2), cpp_bin_float_50(c2) * c2 + cc));
        const double value = kitaev::mutual_info_two_bond_connected(c2, cc);
        EXPECT_NEAR(value, direct, std::max(1e-12, 1e-6 * direct)) << c2 << " " << cc;
        EXPECT_NEAR(value, kitaev::mutual_info_two_bond(c2, c4), std::max(1e-12, 1e-6 * direct));
      }
    }
  }
}

TEST(MutualInfoConnected, RejectsUnphysicalPair) {
  EXPECT_THROW(kitaev::mutual_info_two_bond_connected(0.9, -0.5), kitaev::DomainError);
}

TEST(Concurrence, TwoSiteIsZero) { EXPECT_EQ(kitaev::concurrence_two_site(), 0.0); }

TEST(Concurrence, GeneralizedSiteVersusRest) {
  EXPECT_DOUBLE_EQ(kitaev::generalized_concurrence(0.5, 2), 1.0);
  EXPECT_EQ(kitaev::generalized_concurrence(1.0, 2), 0.0);
  EXPECT_THROW(kitaev::generalized_concurrence(0.2, 2), kitaev::DomainError);
  EXPECT_THROW(kitaev::generalized_concurrence(0.5, 1), kitaev::DomainError);
}

}  // namespace
