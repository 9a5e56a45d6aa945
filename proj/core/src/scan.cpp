#include "kitaev/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kitaev/errors.hpp"
#include "kitaev/information.hpp"

namespace kitaev {

void ScanConfig::validate() const {
  if (!(jz_min >= 0.0 && jz_max <= 1.0 && jz_min < jz_max)) {
    throw DomainError("scan range must satisfy 0 <= jz_min < jz_max <= 1");
  }
  if (num_points < 3) throw DomainError("scan needs at least 3 points");
  if (!(e_floor >= 0.0)) throw DomainError("e_floor must be non-negative");
}

double ScanConfig::step() const { return (jz_max - jz_min) / (num_points - 1); }

double ScanConfig::jz_at(int i) const {
  if (i == num_points - 1) return jz_max;
  return jz_min + (jz_max - jz_min) * i / (num_points - 1);
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::Mi2: return "mi2";
    case Quantity::Dmi2: return "dmi2";
    case Quantity::Mi4: return "mi4";
  }
  return "unknown";
}

std::optional<Quantity> parse_quantity(std::string_view text) {
  if (text == "mi2") return Quantity::Mi2;
  if (text == "dmi2") return Quantity::Dmi2;
  if (text == "mi4") return Quantity::Mi4;
  return std::nullopt;
}

namespace {

template <class PointFn>
ScanSeries run_scan(Quantity q, const ScanConfig& cfg, Exec exec, PointFn&& point) {
  cfg.validate();
  ScanSeries series;
  series.quantity = q;
  series.l = cfg.l.value();
  series.e_floor = cfg.e_floor;
  series.points.resize(static_cast<std::size_t>(cfg.num_points));
  parallel_for(series.points.size(), exec, [&](std::size_t i) {
    const double jz = cfg.jz_at(static_cast<int>(i));
    series.points[i] = point(jz);
  });
  return series;
}

}  // namespace

ScanSeries scan_two_site_mi(const ScanConfig& cfg, Exec exec) {
  const CorrelatorConfig ccfg{cfg.e_floor, false};
  return run_scan(Quantity::Mi2, cfg, exec, [&](double jz) {
    const auto c2 = two_site_zz(line_point(jz), cfg.l, ccfg);
    return ScanSample{jz, mutual_info_two_site(c2.value), c2.floored_points};
  });
}

ScanSeries scan_two_bond_mi(const ScanConfig& cfg, Exec exec) {
  const CorrelatorConfig ccfg{cfg.e_floor, false};
  const Displacement dr = longest_displacement(cfg.l);
  return run_scan(Quantity::Mi4, cfg, exec, [&](double jz) {
    const auto r = two_bond_zzzz_fast(line_point(jz), cfg.l, dr, ccfg);
    return ScanSample{jz, mutual_info_two_bond_connected(r.c2, r.connected),
                      r.floored_points};
  });
}

ScanSeries derivative(const ScanSeries& series) {
  const auto& p = series.points;
  const std::size_t n = p.size();
  if (n < 3) throw DomainError("derivative needs at least 3 samples");
  ScanSeries out;
  out.quantity = series.quantity == Quantity::Mi2 ? Quantity::Dmi2 : series.quantity;
  out.l = series.l;
  out.e_floor = series.e_floor;
  out.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const double slope = (p[hi].value - p[lo].value) / (p[hi].jz - p[lo].jz);
    std::size_t floored = 0;
    for (std::size_t k = lo; k <= hi; ++k) floored = std::max(floored, p[k].floored_points);
    out.points[i] = {p[i].jz, slope, floored};
  }
  return out;
}

Peak find_peak(const ScanSeries& series, std::optional<JzWindow> window) {
  bool found = false;
  Peak best{0.0, -std::numeric_limits<double>::infinity()};
  for (const auto& s : series.points) {
    if (window && (s.jz < window->lo || s.jz > window->hi)) continue;
    if (std::isnan(s.value)) continue;
    if (!found || s.value > best.value) {
      best = {s.jz, s.value};
      found = true;
    }
  }
  if (!found) throw DomainError("find_peak: no samples in the requested range");
  return best;
}

ScanSeries scan_quantity(Quantity q, const ScanConfig& cfg, Exec exec) {
  switch (q) {
    case Quantity::Mi2: return scan_two_site_mi(cfg, exec);
    case Quantity::Dmi2: return derivative(scan_two_site_mi(cfg, exec));
    case Quantity::Mi4: return scan_two_bond_mi(cfg, exec);
  }
  throw DomainError("unknown quantity");
}

namespace {

struct LineFit {
  double slope;
  double intercept;
  double rms;
  double r_squared;
  double unexplained;  ///< ss_res / ss_tot, i.e. 1 - R^2 without cancellation
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (slope * x[i] + intercept);
    ss_res += r * r;
  }
  const double unexplained = syy > 0.0 ? ss_res / syy : 0.0;
  return {slope, intercept, std::sqrt(ss_res / n), 1.0 - unexplained, unexplained};
}

LineFit fit_with_asymptote(const std::vector<double>& x, std::span<const double> peaks,
                           double asymptote) {
  std::vector<double> y(peaks.size());
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    y[i] = std::log2(std::abs(peaks[i] - asymptote));
  }
  return fit_line(x, y);
}

}  // namespace

ScalingFit scaling_fit(std::span<const int> sizes, std::span<const double> peaks,
                       FitMode mode, double fixed_asymptote) {
  if (sizes.size() != peaks.size()) {
    throw DomainError("scaling_fit: sizes and peaks differ in length");
  }
  if (sizes.size() < 3) throw DomainError("scaling_fit: need at least 3 (L, peak) pairs");

  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i : order) {
    x.push_back(static_cast<double>(sizes[i]));
    y.push_back(peaks[i]);
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] == x[i - 1]) throw DomainError("scaling_fit: duplicate system size");
  }

  const bool increasing = y[1] > y[0];
  for (std::size_t i = 1; i < y.size(); ++i) {
    const bool ok = increasing ? y[i] > y[i - 1] : y[i] < y[i - 1];
    if (!ok) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "scaling_fit: peaks are not strictly monotone in L (L = " << x[i - 1]
          << " -> " << x[i] << ": " << y[i - 1] << " -> " << y[i] << ")";
      throw DomainError(msg.str());
    }
  }

  ScalingFit fit;
  const double lo = *std::min_element(y.begin(), y.end());
  const double hi = *std::max_element(y.begin(), y.end());

  if (mode == FitMode::FixedAsymptote) {
    if (fixed_asymptote >= lo && fixed_asymptote <= hi) {
      fit.warnings.push_back("asymptote lies inside the range of the peak values");
    }
    const LineFit lf = fit_with_asymptote(x, y, fixed_asymptote);
    fit.asymptote = fixed_asymptote;
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.residual = lf.rms;
    fit.r_squared = lf.r_squared;
    return fit;
  }

  // The asymptote sits beyond the last (largest-L) peak; parametrize it by
  // its log-distance from that limit and search the residual in that
  // variable: coarse log-spaced scan, then golden section around the best.
  // The objective is the unexplained variance fraction 1 - R^2; the raw RMS
  // would reward asymptotes far away, where log2|peak - A| flattens out.
  const double limit = y.back();
  const double direction = increasing ? 1.0 : -1.0;
  const double span = hi - lo;
  const double scale = std::max(span, std::abs(limit) * 1e-15);
  const double log_lo = std::log(scale * 1e-9);
  const double log_hi = std::log(scale * 1e3);
  auto residual_at = [&](double log_d) {
    return fit_with_asymptote(x, y, limit + direction * std::exp(log_d)).unexplained;
  };

  constexpr int kCoarse = 400;
  int best = 0;
  double best_res = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kCoarse; ++i) {
    const double t = log_lo + (log_hi - log_lo) * i / kCoarse;
    const double r = residual_at(t);
    if (r < best_res) {
      best_res = r;
      best = i;
    }
  }
  double a = log_lo + (log_hi - log_lo) * std::max(best - 1, 0) / kCoarse;
  double b = log_lo + (log_hi - log_lo) * std::min(best + 1, kCoarse) / kCoarse;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = residual_at(c);
  double fd = residual_at(d);
  for (int iter = 0; iter < 200 && (b - a) > 1e-13; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = residual_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = residual_at(d);
    }
  }
  const double log_d = 0.5 * (a + b);
  if (best == 0 || best == kCoarse) {
    fit.warnings.push_back("asymptote search ended at the edge of its bracket");
  }
  fit.asymptote = limit + direction * std::exp(log_d);
  const LineFit lf = fit_with_asymptote(x, y, fit.asymptote);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.residual = lf.rms;
  fit.r_squared = lf.r_squared;
  return fit;
}

std::vector<RasterCell> phase_diagram_raster(int resolution, LatticeSize l, Exec exec) {
  if (resolution < 2) throw DomainError("phase_diagram_raster: resolution must be >= 2");
  std::vector<std::array<int, 3>> index;
  for (int ix = 0; ix <= resolution; ++ix) {
    for (int iy = 0; iy <= resolution - ix; ++iy) {
      index.push_back({ix, iy, resolution - ix - iy});
    }
  }
  const double r = resolution;
  std::vector<std::optional<RasterCell>> cells(index.size());
  parallel_for(index.size(), exec, [&](std::size_t k) {
    const auto [ix, iy, iz] = index[k];
    const Couplings j(ix / r, iy / r, iz / r);
    cells[k] = RasterCell{ix, iy, iz, j, energy_gap(j, l), classify_phase(j)};
  });
  std::vector<RasterCell> out;
  out.reserve(cells.size());
  for (auto& c : cells) out.push_back(*c);
  return out;
}

}  // namespace kitaev
