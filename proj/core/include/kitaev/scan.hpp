#pragma once

// Sweeps along the symmetric line Jx = Jy = (1 - Jz)/2, numerical
// differentiation, peak location, simplex rasters and finite-size scaling
// fits of peak heights.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kitaev/correlators.hpp"
#include "kitaev/parallel.hpp"
#include "kitaev/spectrum.hpp"

namespace kitaev {

struct ScanConfig {
  double jz_min = 0.0;
  double jz_max = 1.0;
  int num_points = 1001;
  LatticeSize l{100};
  double e_floor = 1e-12;

  /// Throws DomainError unless 0 <= jz_min < jz_max <= 1 and num_points >= 3.
  void validate() const;
  double step() const;
  double jz_at(int i) const;
};

enum class Quantity {
  Mi2,   ///< two-site mutual information
  Dmi2,  ///< its jz-derivative
  Mi4,   ///< two-bond mutual information at the longest separation
};

std::string_view to_string(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view text);

struct ScanSample {
  double jz;
  double value;
  std::size_t floored_points;
};

struct ScanSeries {
  Quantity quantity = Quantity::Mi2;
  int l = 0;
  double e_floor = 0.0;
  std::vector<ScanSample> points;
};

struct Peak {
  double jz;
  double value;
};

struct JzWindow {
  double lo;
  double hi;
};

ScanSeries scan_two_site_mi(const ScanConfig& cfg, Exec exec = {});

ScanSeries scan_two_bond_mi(const ScanConfig& cfg, Exec exec = {});

/// Central differences on interior points, one-sided at the two ends; same
/// jz grid. Each output sample carries the largest floored count in its
/// stencil.
ScanSeries derivative(const ScanSeries& series);

/// Largest value, ties resolved toward smaller jz. With a window only
/// samples with lo <= jz <= hi are considered.
Peak find_peak(const ScanSeries& series, std::optional<JzWindow> window = {});

/// Runs the scan for the given quantity (Dmi2 = derivative of Mi2).
ScanSeries scan_quantity(Quantity q, const ScanConfig& cfg, Exec exec = {});

enum class FitMode { FitAsymptote, FixedAsymptote };

/// log2|peak - asymptote| = slope * L + intercept.
struct ScalingFit {
  double asymptote = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;   ///< RMS of the linear fit in log2 space
  double r_squared = 0.0;
  std::vector<std::string> warnings;
};

/// Needs >= 3 (L, peak) pairs with peaks strictly monotone in L. In
/// FitAsymptote mode the asymptote maximizes the R^2 of the linear fit,
/// searched on the far side of the data's monotone limit.
ScalingFit scaling_fit(std::span<const int> sizes, std::span<const double> peaks,
                       FitMode mode, double fixed_asymptote = 0.0);

struct RasterCell {
  int ix;
  int iy;
  int iz;
  Couplings couplings;
  double gap;
  Phase phase;
};

/// Barycentric grid (ix, iy, iz)/resolution on the simplex
/// Jx + Jy + Jz = 1, Ja >= 0; (r + 1)(r + 2)/2 cells ordered by ix, then iy.
std::vector<RasterCell> phase_diagram_raster(int resolution, LatticeSize l,
                                             Exec exec = {});

}  // namespace kitaev
