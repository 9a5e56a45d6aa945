#include "kitaev/correlators.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "kitaev/errors.hpp"

namespace kitaev {
namespace {

// cos/sin of pi k / L for k in [0, 2L): every phase q.dr on the grid is of
// this form, so reducing k modulo 2L keeps the trig arguments small.
struct PhaseTable {
  explicit PhaseTable(int l) : two_l(2 * l), cos_(two_l), sin_(two_l) {
    for (int k = 0; k < two_l; ++k) {
      const double a = std::numbers::pi * k / l;
      cos_[k] = std::cos(a);
      sin_[k] = std::sin(a);
    }
  }

  int reduce(std::int64_t k) const {
    std::int64_t r = k % two_l;
    if (r < 0) r += two_l;
    return static_cast<int>(r);
  }

  int two_l;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// A = delta/E and B = eps/E at one grid point, zeroed below the floor.
struct Ratios {
  double a;
  double b;
  bool floored;
};

Ratios ratios(const SpectralPoint& p, double e_floor) {
  if (p.e < e_floor || p.e == 0.0) return {0.0, 0.0, true};
  return {p.delta / p.e, p.eps / p.e, false};
}

// Integer k with q.dr = pi k / L.
std::int64_t phase_index(const MomentumGrid& grid, std::size_t k, Displacement dr) {
  const int l = grid.l();
  const int ix = static_cast<int>(k / l);
  const int iy = static_cast<int>(k % l);
  return static_cast<std::int64_t>(grid.twice_n(ix)) * dr.d1 +
         static_cast<std::int64_t>(grid.twice_n(iy)) * dr.d2;
}

}  // namespace

TwoSiteResult two_site_zz(const Couplings& j, LatticeSize l,
                          const CorrelatorConfig& cfg, Exec exec) {
  const MomentumGrid grid(l);
  const auto sums = deterministic_sums<2>(
      grid.points(),
      [&](std::size_t k, std::array<double, 2>& out) {
        const Ratios r = ratios(grid.spectral(k, j), cfg.e_floor);
        out[0] = r.b;
        out[1] = r.floored ? 1.0 : 0.0;
      },
      exec);
  const double n = static_cast<double>(grid.points());
  return {sums[0] / n, static_cast<std::size_t>(sums[1])};
}

TwoBondResult two_bond_zzzz_fast(const Couplings& j, LatticeSize l,
                                 Displacement dr, const CorrelatorConfig& cfg,
                                 Exec exec) {
  const MomentumGrid grid(l);
  const PhaseTable phase(l.value());
  const auto sums = deterministic_sums<4>(
      grid.points(),
      [&](std::size_t k, std::array<double, 4>& out) {
        const Ratios r = ratios(grid.spectral(k, j), cfg.e_floor);
        const int p = phase.reduce(phase_index(grid, k, dr));
        out[0] = r.b;
        out[1] = r.a * phase.sin_[p];
        out[2] = r.b * phase.cos_[p];
        out[3] = r.floored ? 1.0 : 0.0;
      },
      exec);
  const double n = static_cast<double>(grid.points());
  const double c2 = sums[0] / n;
  const double s_a = sums[1] / n;
  const double s_b = sums[2] / n;
  // (S_A - S_B)(S_A + S_B) is the better-conditioned form of S_A^2 - S_B^2.
  const double connected = (s_a - s_b) * (s_a + s_b);
  TwoBondResult out;
  out.c2 = c2;
  out.connected = connected;
  out.c4 = connected + c2 * c2;
  out.floored_points = static_cast<std::size_t>(sums[3]);
  return out;
}

TwoBondResult two_bond_zzzz_naive(const Couplings& j, LatticeSize l,
                                  Displacement dr, const CorrelatorConfig& cfg,
                                  Exec exec) {
  if (l.value() > kNaiveMaxL && !cfg.allow_large_naive) {
    throw SizeGuardError("two_bond_zzzz_naive: L = " + std::to_string(l.value()) +
                         " exceeds the O(L^4) guard (L <= " +
                         std::to_string(kNaiveMaxL) +
                         "); use two_bond_zzzz_fast or set allow_large_naive");
  }
  const MomentumGrid grid(l);
  const PhaseTable phase(l.value());
  const std::size_t n = grid.points();

  std::vector<double> a(n);
  std::vector<double> b(n);
  std::vector<std::int64_t> m(n);
  std::size_t floored = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Ratios r = ratios(grid.spectral(k, j), cfg.e_floor);
    a[k] = r.a;
    b[k] = r.b;
    floored += r.floored ? 1 : 0;
    m[k] = phase_index(grid, k, dr);
  }

  const double total = deterministic_sum(
      n * n,
      [&](std::size_t pair) {
        const std::size_t k1 = pair / n;
        const std::size_t k3 = pair % n;
        const double weight = a[k1] * a[k3] - b[k1] * b[k3];
        return weight * (phase.cos_[phase.reduce(m[k1] - m[k3])] - 1.0);
      },
      exec);

  const double nn = static_cast<double>(n);
  const double c2 = deterministic_sum(n, [&](std::size_t k) { return b[k]; }) / nn;
  TwoBondResult out;
  out.c4 = total / (nn * nn);
  out.c2 = c2;
  out.connected = out.c4 - c2 * c2;
  out.floored_points = floored;
  return out;
}

Displacement longest_displacement(LatticeSize l) {
  const int half = l.value() / 2;
  return {half, half};
}

}  // namespace kitaev
