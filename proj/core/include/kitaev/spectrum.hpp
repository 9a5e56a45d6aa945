#pragma once

// Single-particle spectrum of the vortex-free Kitaev honeycomb model on an
// L x L torus.
//
// In the vortex-free sector the model reduces to free Majorana fermions with
// f(q) = Jx e^{i qx} + Jy e^{i qy} + Jz = eps(q) + i delta(q) and
// quasiparticle energy E(q) = |f(q)|. Momenta are q = 2 pi n / L with
// n = -(L-1)/2, ..., (L-1)/2 in unit steps, taken literally for every L
// (half-integer n for even L).

#include <cstddef>
#include <string_view>
#include <vector>

#include "kitaev/parallel.hpp"

namespace kitaev {

/// Bond strengths (Jx, Jy, Jz). Finite, not all zero.
class Couplings {
 public:
  Couplings(double jx, double jy, double jz);

  double jx() const { return jx_; }
  double jy() const { return jy_; }
  double jz() const { return jz_; }

  /// Same direction in coupling space with jx + jy + jz = 1.
  Couplings normalized() const;
  Couplings scaled(double factor) const;

  friend bool operator==(const Couplings&, const Couplings&) = default;

 private:
  double jx_;
  double jy_;
  double jz_;
};

/// Number of unit cells per torus direction (2 L^2 sites). L >= 2.
class LatticeSize {
 public:
  explicit LatticeSize(int l);

  int value() const { return l_; }
  std::size_t cells() const { return static_cast<std::size_t>(l_) * l_; }

  friend bool operator==(const LatticeSize&, const LatticeSize&) = default;

 private:
  int l_;
};

struct Momentum {
  double qx;
  double qy;
};

struct SpectralPoint {
  double eps;
  double delta;
  double e;
};

enum class Phase { GaplessB, GappedAx, GappedAy, GappedAz };

std::string_view to_string(Phase phase);

/// Per-axis momentum tables for one lattice size.
///
/// Index i in [0, L) corresponds to n = i - (L-1)/2. The cos/sin tables are
/// mirrored so that cos(q_{L-1-i}) == cos(q_i) and sin(q_{L-1-i}) ==
/// -sin(q_i) hold exactly; the grid is closed under q -> -q bit for bit.
class MomentumGrid {
 public:
  explicit MomentumGrid(LatticeSize l);

  int l() const { return l_; }
  std::size_t points() const { return static_cast<std::size_t>(l_) * l_; }

  /// 2n for axis index i, always an integer with the parity of L - 1.
  int twice_n(int i) const { return 2 * i - (l_ - 1); }
  double q(int i) const { return q_[i]; }
  double cos_q(int i) const { return cos_[i]; }
  double sin_q(int i) const { return sin_[i]; }

  /// Row-major over (ix, iy): k = ix * L + iy.
  Momentum at(std::size_t k) const {
    return {q_[k / l_], q_[k % l_]};
  }

  SpectralPoint spectral(std::size_t k, const Couplings& j) const;

 private:
  int l_;
  std::vector<double> q_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// The L^2 grid momenta, row-major in (n_x, n_y) ascending.
std::vector<Momentum> momentum_grid(LatticeSize l);

SpectralPoint spectral_point(Momentum q, const Couplings& j);

/// 2 * min_q E(q) over the grid.
double energy_gap(const Couplings& j, LatticeSize l, Exec exec = {});

/// -sum_q E(q): every quasiparticle mode occupied.
double ground_energy(const Couplings& j, LatticeSize l, Exec exec = {});

/// GaplessB when |Ja| <= |Jb| + |Jc| for all three orderings (boundary
/// included); otherwise the gapped phase of the dominant coupling.
Phase classify_phase(const Couplings& j);

/// ((1 - jz)/2, (1 - jz)/2, jz) for jz in [0, 1].
Couplings line_point(double jz);

}  // namespace kitaev
