#include "kitaev/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kitaev/errors.hpp"

namespace kitaev {

Couplings::Couplings(double jx, double jy, double jz) : jx_(jx), jy_(jy), jz_(jz) {
  if (!std::isfinite(jx) || !std::isfinite(jy) || !std::isfinite(jz)) {
    throw DomainError("couplings must be finite");
  }
  if (jx == 0.0 && jy == 0.0 && jz == 0.0) {
    throw DomainError("at least one coupling must be nonzero");
  }
}

Couplings Couplings::normalized() const {
  const double sum = jx_ + jy_ + jz_;
  if (sum == 0.0) throw DomainError("cannot normalize couplings that sum to zero");
  return {jx_ / sum, jy_ / sum, jz_ / sum};
}

Couplings Couplings::scaled(double factor) const {
  return {jx_ * factor, jy_ * factor, jz_ * factor};
}

LatticeSize::LatticeSize(int l) : l_(l) {
  if (l < 2) throw DomainError("lattice size L must be >= 2, got " + std::to_string(l));
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::GaplessB: return "GaplessB";
    case Phase::GappedAx: return "GappedAx";
    case Phase::GappedAy: return "GappedAy";
    case Phase::GappedAz: return "GappedAz";
  }
  return "unknown";
}

MomentumGrid::MomentumGrid(LatticeSize l)
    : l_(l.value()), q_(l_), cos_(l_), sin_(l_) {
  // Fill the non-negative half and mirror it.
  for (int i = 0; i < l_; ++i) {
    const int mirror = l_ - 1 - i;
    if (mirror < i) break;
    const double n = 0.5 * static_cast<double>(twice_n(mirror));  // >= 0
    const double q = 2.0 * std::numbers::pi * n / l_;
    q_[mirror] = q;
    cos_[mirror] = std::cos(q);
    sin_[mirror] = std::sin(q);
    if (mirror != i) {
      q_[i] = -q;
      cos_[i] = cos_[mirror];
      sin_[i] = -sin_[mirror];
    }
  }
}

SpectralPoint MomentumGrid::spectral(std::size_t k, const Couplings& j) const {
  const std::size_t ix = k / l_;
  const std::size_t iy = k % l_;
  const double eps = j.jx() * cos_[ix] + j.jy() * cos_[iy] + j.jz();
  const double delta = j.jx() * sin_[ix] + j.jy() * sin_[iy];
  return {eps, delta, std::sqrt(eps * eps + delta * delta)};
}

std::vector<Momentum> momentum_grid(LatticeSize l) {
  const MomentumGrid grid(l);
  std::vector<Momentum> out(grid.points());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = grid.at(k);
  return out;
}

SpectralPoint spectral_point(Momentum q, const Couplings& j) {
  const double eps = j.jx() * std::cos(q.qx) + j.jy() * std::cos(q.qy) + j.jz();
  const double delta = j.jx() * std::sin(q.qx) + j.jy() * std::sin(q.qy);
  return {eps, delta, std::sqrt(eps * eps + delta * delta)};
}

double energy_gap(const Couplings& j, LatticeSize l, Exec exec) {
  const MomentumGrid grid(l);
  const std::size_t rows = static_cast<std::size_t>(grid.l());
  std::vector<double> row_min(rows, std::numeric_limits<double>::infinity());
  parallel_for(rows, exec, [&](std::size_t ix) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t iy = 0; iy < rows; ++iy) {
      m = std::min(m, grid.spectral(ix * rows + iy, j).e);
    }
    row_min[ix] = m;
  });
  return 2.0 * *std::min_element(row_min.begin(), row_min.end());
}

double ground_energy(const Couplings& j, LatticeSize l, Exec exec) {
  const MomentumGrid grid(l);
  return -deterministic_sum(
      grid.points(), [&](std::size_t k) { return grid.spectral(k, j).e; }, exec);
}

Phase classify_phase(const Couplings& j) {
  const double ax = std::abs(j.jx());
  const double ay = std::abs(j.jy());
  const double az = std::abs(j.jz());
  if (ax > ay + az) return Phase::GappedAx;
  if (ay > ax + az) return Phase::GappedAy;
  if (az > ax + ay) return Phase::GappedAz;
  return Phase::GaplessB;
}

Couplings line_point(double jz) {
  if (!(jz >= 0.0 && jz <= 1.0)) {
    throw DomainError("line_point: jz must lie in [0, 1], got " + std::to_string(jz));
  }
  const double jxy = 0.5 * (1.0 - jz);
  return {jxy, jxy, jz};
}

}  // namespace kitaev
