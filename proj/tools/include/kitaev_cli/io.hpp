#pragma once

// Serialization of scan series, fits, rasters and oracle reports. All
// numbers are written with 17 significant digits, so a fixed input gives
// fixed bytes.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kitaev/ed_oracle.hpp"
#include "kitaev/scan.hpp"

namespace kitaev::cli {

/// Ordered (key, value) pairs echoed at the top of every output.
using Header = std::vector<std::pair<std::string, std::string>>;

std::string format_number(double v);

/// Starts with the tool name and library version, then the given pairs.
Header make_header(std::string command);

std::string series_csv(const Header& header, const ScanSeries& series);
std::string series_json(const Header& header, const ScanSeries& series);

struct SpectrumReport {
  Couplings couplings;
  int l;
  double gap;
  double ground_energy;
  Phase phase;
};

std::string spectrum_text(const Header& header, const SpectrumReport& report);
std::string spectrum_json(const Header& header, const SpectrumReport& report);

struct SizedPeak {
  int l;
  Peak peak;
};

std::string fit_text(const Header& header, std::span<const SizedPeak> peaks,
                     const ScalingFit& fit);
std::string fit_json(const Header& header, std::span<const SizedPeak> peaks,
                     const ScalingFit& fit);

std::string raster_csv(const Header& header, std::span<const RasterCell> cells);
std::string raster_json(const Header& header, std::span<const RasterCell> cells);

std::string oracle_text(const Header& header, const ed::OracleReport& report);
std::string oracle_json(const Header& header, const ed::OracleReport& report);

}  // namespace kitaev::cli
