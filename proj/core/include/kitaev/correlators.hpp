#pragma once

// Ground-state sigma^z correlators of z-linked sites as momentum sums.
//
// With A(q) = delta(q)/E(q) and B(q) = eps(q)/E(q):
//
//   <zz>   = (1/L^2) sum_q B(q)
//   <zzzz> = (1/L^4) sum_{q1,q3} (A1 A3 - B1 B3) (cos[(q1 - q3).dr] - 1)
//
// The double sum factorizes into S_A^2 - S_B^2 + <zz>^2 with
// S_A = (1/L^2) sum_q A sin(q.dr) and S_B = (1/L^2) sum_q B cos(q.dr),
// which the fast path evaluates in O(L^2). S_A^2 - S_B^2 is the connected
// part <zzzz> - <zz>^2 and is returned separately, since subtracting two
// O(1) numbers would lose it once it drops below ~1e-8.
//
// Momenta with E(q) < e_floor contribute zero (the 0/0 points where the
// spectrum touches zero on the grid); how many were dropped is reported.

#include <cstddef>

#include "kitaev/parallel.hpp"
#include "kitaev/spectrum.hpp"

namespace kitaev {

/// Bond separation in units of the two lattice vectors, taken modulo L.
struct Displacement {
  int d1 = 0;
  int d2 = 0;
};

struct CorrelatorConfig {
  double e_floor = 1e-12;
  /// Lifts the L <= kNaiveMaxL guard of two_bond_zzzz_naive.
  bool allow_large_naive = false;
};

inline constexpr int kNaiveMaxL = 64;

struct TwoSiteResult {
  double value = 0.0;
  std::size_t floored_points = 0;
};

struct TwoBondResult {
  double c4 = 0.0;         ///< <zzzz>
  double connected = 0.0;  ///< <zzzz> - <zz>^2
  double c2 = 0.0;         ///< <zz> on the same grid
  std::size_t floored_points = 0;
};

TwoSiteResult two_site_zz(const Couplings& j, LatticeSize l,
                          const CorrelatorConfig& cfg = {}, Exec exec = {});

/// Reference O(L^4) double sum. Refuses L > kNaiveMaxL unless
/// cfg.allow_large_naive is set.
TwoBondResult two_bond_zzzz_naive(const Couplings& j, LatticeSize l,
                                  Displacement dr,
                                  const CorrelatorConfig& cfg = {},
                                  Exec exec = {});

TwoBondResult two_bond_zzzz_fast(const Couplings& j, LatticeSize l,
                                 Displacement dr,
                                 const CorrelatorConfig& cfg = {},
                                 Exec exec = {});

/// (L/2, L/2) for even L; floor(L/2) per axis for odd L.
Displacement longest_displacement(LatticeSize l);

}  // namespace kitaev
