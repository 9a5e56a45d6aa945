#include "kitaev_cli/io.hpp"

#include <fmt/format.h>

#include "json.hpp"
#include "kitaev/version.hpp"

namespace kitaev::cli {
namespace {

using nlohmann::ordered_json;

std::string header_lines(const Header& header) {
  std::string s;
  for (const auto& [key, value] : header) s += fmt::format("# {}: {}\n", key, value);
  return s;
}

ordered_json header_object(const Header& header) {
  ordered_json obj = ordered_json::object();
  for (const auto& [key, value] : header) obj[key] = value;
  return obj;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

Header make_header(std::string command) {
  return {{"tool", "kitaev-mi"}, {"version", std::string(kVersion)}, {"command", std::move(command)}};
}

std::string spectrum_text(const Header& header, const SpectrumReport& r) {
  std::string s = header_lines(header);
  s += fmt::format("gap: {}\n", format_number(r.gap));
  s += fmt::format("ground_energy: {}\n", format_number(r.ground_energy));
  s += fmt::format("phase: {}\n", to_string(r.phase));
  return s;
}

std::string spectrum_json(const Header& header, const SpectrumReport& r) {
  ordered_json doc;
  doc["header"] = header_object(header);
  doc["gap"] = r.gap;
  doc["ground_energy"] = r.ground_energy;
  doc["phase"] = std::string(to_string(r.phase));
  return dump(doc);
}

std::string series_csv(const Header& header, const ScanSeries& series) {
  std::string s = header_lines(header);
  s += "jz,value,floored_points\n";
  for (const ScanSample& p : series.points) {
    s += fmt::format("{},{},{}\n", format_number(p.jz), format_number(p.value), p.floored_points);
  }
  return s;
}

std::string series_json(const Header& header, const ScanSeries& series) {
  ordered_json doc;
  doc["header"] = header_object(header);
  ordered_json rows = ordered_json::array();
  for (const ScanSample& p : series.points) {
    rows.push_back({{"jz", p.jz}, {"value", p.value}, {"floored_points", p.floored_points}});
  }
  doc["points"] = std::move(rows);
  return dump(doc);
}

std::string fit_text(const Header& header, std::span<const SizedPeak> peaks,
                     const ScalingFit& fit) {
  std::string s = header_lines(header);
  s += "L,peak_jz,peak_value\n";
  for (const SizedPeak& p : peaks) {
    s += fmt::format("{},{},{}\n", p.l, format_number(p.peak.jz), format_number(p.peak.value));
  }
  s += fmt::format("asymptote: {}\n", format_number(fit.asymptote));
  s += fmt::format("slope: {}\n", format_number(fit.slope));
  s += fmt::format("intercept: {}\n", format_number(fit.intercept));
  s += fmt::format("residual: {}\n", format_number(fit.residual));
  s += fmt::format("r_squared: {}\n", format_number(fit.r_squared));
  for (const std::string& w : fit.warnings) s += fmt::format("warning: {}\n", w);
  return s;
}

std::string fit_json(const Header& header, std::span<const SizedPeak> peaks,
                     const ScalingFit& fit) {
  ordered_json doc;
  doc["header"] = header_object(header);
  ordered_json rows = ordered_json::array();
  for (const SizedPeak& p : peaks) {
    rows.push_back({{"L", p.l}, {"peak_jz", p.peak.jz}, {"peak_value", p.peak.value}});
  }
  doc["peaks"] = std::move(rows);
  doc["asymptote"] = fit.asymptote;
  doc["slope"] = fit.slope;
  doc["intercept"] = fit.intercept;
  doc["residual"] = fit.residual;
  doc["r_squared"] = fit.r_squared;
  doc["warnings"] = fit.warnings;
  return dump(doc);
}

std::string raster_csv(const Header& header, std::span<const RasterCell> cells) {
  std::string s = header_lines(header);
  s += "ix,iy,iz,jx,jy,jz,gap,phase\n";
  for (const RasterCell& c : cells) {
    s += fmt::format("{},{},{},{},{},{},{},{}\n", c.ix, c.iy, c.iz,
                     format_number(c.couplings.jx()), format_number(c.couplings.jy()),
                     format_number(c.couplings.jz()), format_number(c.gap), to_string(c.phase));
  }
  return s;
}

std::string raster_json(const Header& header, std::span<const RasterCell> cells) {
  ordered_json doc;
  doc["header"] = header_object(header);
  ordered_json rows = ordered_json::array();
  for (const RasterCell& c : cells) {
    rows.push_back({{"ix", c.ix},
                    {"iy", c.iy},
                    {"iz", c.iz},
                    {"jx", c.couplings.jx()},
                    {"jy", c.couplings.jy()},
                    {"jz", c.couplings.jz()},
                    {"gap", c.gap},
                    {"phase", std::string(to_string(c.phase))}});
  }
  doc["cells"] = std::move(rows);
  return dump(doc);
}

std::string oracle_text(const Header& header, const ed::OracleReport& report) {
  std::string s = header_lines(header);
  int failed = 0;
  for (const ed::CheckResult& c : report.checks) {
    s += fmt::format("{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    if (!c.passed) ++failed;
  }
  for (const std::string& line : report.info) s += fmt::format("info: {}\n", line);
  if (failed == 0) {
    s += fmt::format("all {} checks passed\n", report.checks.size());
  } else {
    s += fmt::format("{} of {} checks failed\n", failed, report.checks.size());
  }
  return s;
}

std::string oracle_json(const Header& header, const ed::OracleReport& report) {
  ordered_json doc;
  doc["header"] = header_object(header);
  ordered_json checks = ordered_json::array();
  for (const ed::CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  doc["checks"] = std::move(checks);
  doc["info"] = report.info;
  doc["all_passed"] = report.all_passed();
  return dump(doc);
}

}  // namespace kitaev::cli
