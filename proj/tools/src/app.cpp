#include "kitaev_cli/app.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "kitaev/errors.hpp"
#include "kitaev/version.hpp"
#include "kitaev_cli/io.hpp"

namespace kitaev::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_plain(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double require_number(const std::string& flag, const std::string& text) {
  const auto v = parse_number(text);
  if (!v) throw UsageError(flag + ": not a number or fraction: '" + text + "'");
  return *v;
}

Exec default_exec() {
  const char* env = std::getenv(kWorkersEnv);
  if (env == nullptr || *env == '\0') return Exec{0};
  const auto v = parse_int(env);
  if (!v || *v < 0) throw UsageError(std::string(kWorkersEnv) + ": not a worker count: '" + env + "'");
  return Exec{static_cast<unsigned>(*v)};
}

// Result of a command: bytes to emit plus the exit code they carry.
struct Outcome {
  std::string text;
  int code = kSuccess;
};

struct Common {
  std::string output;
  std::string format;
  std::optional<int> workers;
};

void add_common(CLI::App* sub, Common& c, std::vector<std::string> formats) {
  sub->add_option("--output,-o", c.output, "Write results to this file instead of stdout");
  c.format = formats.front();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember(std::move(formats)));
  sub->add_option("--workers", c.workers,
                  std::string("Worker threads (0 = all cores; default from ") + kWorkersEnv + ")")
      ->check(CLI::NonNegativeNumber);
}

Exec exec_of(const Common& c) {
  return c.workers ? Exec{static_cast<unsigned>(*c.workers)} : default_exec();
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text);
  const auto num = parse_plain(text.substr(0, slash));
  const auto den = parse_plain(text.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

std::optional<std::vector<int>> parse_int_list(std::string_view text) {
  text = trim(text);
  std::vector<int> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<int> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      const auto v = parse_int(text.substr(start, colon - start));
      if (!v) return std::nullopt;
      parts.push_back(*v);
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) return std::nullopt;
    for (int v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto v = parse_int(text.substr(start, comma - start));
    if (!v) return std::nullopt;
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<JzWindow> parse_window(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  const auto lo = parse_number(text.substr(0, comma));
  const auto hi = parse_number(text.substr(comma + 1));
  if (!lo || !hi || !(*lo < *hi)) return std::nullopt;
  return JzWindow{*lo, *hi};
}

ed::ClusterLinks parse_links_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("links: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("links: expected a JSON object");
  auto family = [&](const char* key) {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("links: missing '") + key + "'");
    const auto& arr = doc.at(key);
    if (!arr.is_array() || arr.size() != 4) {
      throw std::invalid_argument(std::string("links: '") + key + "' must hold four pairs");
    }
    std::array<ed::Link, 4> links{};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& pair = arr[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        throw std::invalid_argument(std::string("links: '") + key +
                                    "' entries must be integer pairs");
      }
      const int a = pair[0].get<int>();
      const int b = pair[1].get<int>();
      if (a < 1 || a > ed::kClusterSites || b < 1 || b > ed::kClusterSites) {
        throw std::invalid_argument("links: site indices must lie in 1..8");
      }
      links[i] = {a, b};
    }
    return links;
  };
  return {family("x"), family("y"), family("z")};
}

std::vector<std::pair<int, double>> parse_peaks_csv(std::string_view text) {
  std::vector<std::pair<int, double>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("peaks: expected 'L,peak' but got '" + std::string(row) + "'");
    }
    const auto l = parse_int(row.substr(0, comma));
    const auto peak = parse_plain(row.substr(comma + 1));
    if (!l || !peak) {
      if (first_data_line) {
        first_data_line = false;
        continue;  // column header
      }
      throw std::invalid_argument("peaks: malformed row '" + std::string(row) + "'");
    }
    first_data_line = false;
    out.emplace_back(*l, *peak);
  }
  return out;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mutual-information diagnostics for the Kitaev honeycomb model", "kitaev-mi"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::function<Outcome()> action;

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Gap, ground energy and phase for one coupling");
  Common spectrum_common;
  std::string jx_text = "0";
  std::string jy_text = "0";
  std::string jz_text = "0";
  int spectrum_l = 100;
  spectrum->add_option("--jx", jx_text, "Jx (decimal or fraction p/q)");
  spectrum->add_option("--jy", jy_text, "Jy (decimal or fraction p/q)");
  spectrum->add_option("--jz", jz_text, "Jz (decimal or fraction p/q)");
  spectrum->add_option("--L", spectrum_l, "Unit cells per torus direction");
  add_common(spectrum, spectrum_common, {"text", "json"});
  spectrum->callback([&] {
    action = [&] {
      const Couplings j(require_number("--jx", jx_text), require_number("--jy", jy_text),
                        require_number("--jz", jz_text));
      const LatticeSize l(spectrum_l);
      const Exec exec = exec_of(spectrum_common);
      const SpectrumReport report{j, spectrum_l, energy_gap(j, l, exec), ground_energy(j, l, exec),
                                  classify_phase(j)};
      Header h = make_header("spectrum");
      h.emplace_back("jx", format_number(j.jx()));
      h.emplace_back("jy", format_number(j.jy()));
      h.emplace_back("jz", format_number(j.jz()));
      h.emplace_back("L", std::to_string(spectrum_l));
      return Outcome{spectrum_common.format == "json" ? spectrum_json(h, report)
                                                      : spectrum_text(h, report)};
    };
  });

  // scan
  auto* scan = app.add_subcommand("scan", "Sweep a quantity along Jx = Jy = (1 - Jz)/2");
  Common scan_common;
  std::string quantity_text = "mi2";
  std::optional<int> scan_l;
  ScanConfig scan_cfg;
  scan->add_option("--quantity", quantity_text, "mi2, dmi2 or mi4")
      ->check(CLI::IsMember({"mi2", "dmi2", "mi4"}));
  scan->add_option("--L", scan_l, "Unit cells per direction (default 100, or 16 for mi4)");
  scan->add_option("--points", scan_cfg.num_points, "Number of jz samples");
  scan->add_option("--jz-min", scan_cfg.jz_min, "First jz");
  scan->add_option("--jz-max", scan_cfg.jz_max, "Last jz");
  scan->add_option("--e-floor", scan_cfg.e_floor, "Energies below this are skipped");
  add_common(scan, scan_common, {"csv", "json"});
  scan->callback([&] {
    action = [&] {
      const Quantity q = *parse_quantity(quantity_text);
      scan_cfg.l = LatticeSize(scan_l.value_or(q == Quantity::Mi4 ? 16 : 100));
      scan_cfg.validate();
      const ScanSeries series = scan_quantity(q, scan_cfg, exec_of(scan_common));
      Header h = make_header("scan");
      h.emplace_back("quantity", quantity_text);
      h.emplace_back("L", std::to_string(scan_cfg.l.value()));
      h.emplace_back("points", std::to_string(scan_cfg.num_points));
      h.emplace_back("jz_min", format_number(scan_cfg.jz_min));
      h.emplace_back("jz_max", format_number(scan_cfg.jz_max));
      h.emplace_back("e_floor", format_number(scan_cfg.e_floor));
      return Outcome{scan_common.format == "json" ? series_json(h, series) : series_csv(h, series)};
    };
  });

  // fit
  auto* fit = app.add_subcommand("fit", "Finite-size scaling fit of peak heights");
  Common fit_common;
  std::string fit_quantity = "dmi2";
  std::string l_list_text;
  std::string mode_text;
  double fixed_asymptote = 0.0;
  std::string window_text;
  std::string input_path;
  ScanConfig fit_cfg;
  fit->add_option("--quantity", fit_quantity, "dmi2 or mi4")
      ->check(CLI::IsMember({"mi2", "dmi2", "mi4"}));
  fit->add_option("--L-list", l_list_text,
                  "Sizes, e.g. 40,50,60 or 40:100:10 (default 40:100:10, or 12:24:4 for mi4)");
  fit->add_option("--mode", mode_text, "fit (search the asymptote) or fixed (default: fit, "
                                       "or fixed for mi4)")
      ->check(CLI::IsMember({"fit", "fixed"}));
  fit->add_option("--asymptote", fixed_asymptote, "Asymptote used in fixed mode");
  fit->add_option("--window", window_text,
                  "Peak search window lo,hi in jz (default none, or 0.45,0.55 for mi4)");
  fit->add_option("--points", fit_cfg.num_points, "Number of jz samples per scan");
  fit->add_option("--e-floor", fit_cfg.e_floor, "Energies below this are skipped");
  fit->add_option("--input", input_path, "Fit (L, peak) rows from a CSV instead of scanning");
  add_common(fit, fit_common, {"text", "json"});
  fit->callback([&] {
    action = [&] {
      const Quantity q = *parse_quantity(fit_quantity);
      const FitMode mode =
          (mode_text.empty() ? (q == Quantity::Mi4 ? "fixed" : "fit") : mode_text) == "fixed"
              ? FitMode::FixedAsymptote
              : FitMode::FitAsymptote;
      std::optional<JzWindow> window;
      if (!window_text.empty()) {
        window = parse_window(window_text);
        if (!window) throw UsageError("--window: expected lo,hi with lo < hi");
      } else if (q == Quantity::Mi4) {
        window = JzWindow{0.45, 0.55};
      }
      std::vector<SizedPeak> peaks;
      Header h = make_header("fit");
      h.emplace_back("quantity", fit_quantity);
      h.emplace_back("mode", mode == FitMode::FixedAsymptote ? "fixed" : "fit");
      if (mode == FitMode::FixedAsymptote) h.emplace_back("asymptote", format_number(fixed_asymptote));
      if (!input_path.empty()) {
        std::vector<std::pair<int, double>> rows;
        try {
          rows = parse_peaks_csv(read_file(input_path));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        for (const auto& [l, value] : rows) peaks.push_back({l, Peak{0.0, value}});
        h.emplace_back("input", input_path);
      } else {
        std::optional<std::vector<int>> sizes;
        if (l_list_text.empty()) {
          sizes = q == Quantity::Mi4 ? std::vector<int>{12, 16, 20, 24}
                                     : std::vector<int>{40, 50, 60, 70, 80, 90, 100};
        } else {
          sizes = parse_int_list(l_list_text);
          if (!sizes) throw UsageError("--L-list: expected a,b,c or first:last:step");
        }
        for (int l : *sizes) static_cast<void>(LatticeSize{l});
        fit_cfg.validate();
        std::string list;
        for (int l : *sizes) list += (list.empty() ? "" : ",") + std::to_string(l);
        h.emplace_back("L_list", list);
        h.emplace_back("points", std::to_string(fit_cfg.num_points));
        h.emplace_back("e_floor", format_number(fit_cfg.e_floor));
        if (window) {
          h.emplace_back("window", format_number(window->lo) + "," + format_number(window->hi));
        }
        for (int l : *sizes) {
          ScanConfig cfg = fit_cfg;
          cfg.l = LatticeSize(l);
          peaks.push_back({l, find_peak(scan_quantity(q, cfg, exec_of(fit_common)), window)});
        }
      }
      std::vector<int> ls;
      std::vector<double> values;
      for (const SizedPeak& p : peaks) {
        ls.push_back(p.l);
        values.push_back(p.peak.value);
      }
      ScalingFit result;
      try {
        result = scaling_fit(ls, values, mode, fixed_asymptote);
      } catch (const DomainError& e) {
        std::string text;
        for (const SizedPeak& p : peaks) {
          text += "L=" + std::to_string(p.l) + " peak_jz=" + format_number(p.peak.jz) +
                  " peak_value=" + format_number(p.peak.value) + "\n";
        }
        err << text;
        throw NumericalError(std::string("fit failed: ") + e.what());
      }
      return Outcome{fit_common.format == "json" ? fit_json(h, peaks, result)
                                                 : fit_text(h, peaks, result)};
    };
  });

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check", "Exact-diagonalization cross-checks");
  Common oracle_common;
  int samples = 25;
  std::uint64_t seed = 7;
  std::string links_path;
  oracle->add_option("--samples", samples, "Number of coupling points")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--seed", seed, "Seed for coupling points and trial states");
  oracle->add_option("--links", links_path, "JSON link table replacing the standard cluster");
  oracle->add_option("--report", oracle_common.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  oracle->add_option("--output,-o", oracle_common.output, "Write the report to this file");
  oracle->add_option("--workers", oracle_common.workers,
                     std::string("Worker threads (0 = all cores; default from ") + kWorkersEnv + ")")
      ->check(CLI::NonNegativeNumber);
  oracle_common.format = "text";
  oracle->callback([&] {
    action = [&] {
      ed::ClusterLinks links = ed::ClusterLinks::standard();
      Header h = make_header("oracle-check");
      h.emplace_back("samples", std::to_string(samples));
      h.emplace_back("seed", std::to_string(seed));
      if (!links_path.empty()) {
        try {
          links = parse_links_json(read_file(links_path));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        h.emplace_back("links", links_path);
      }
      const auto points = ed::oracle_samples(samples, seed);
      const ed::OracleReport report = ed::check_invariants(links, points, seed, exec_of(oracle_common));
      return Outcome{oracle_common.format == "json" ? oracle_json(h, report) : oracle_text(h, report),
                     report.all_passed() ? kSuccess : kCheckFailure};
    };
  });

  // phase-diagram
  auto* diagram = app.add_subcommand("phase-diagram", "Gap and phase over the coupling simplex");
  Common diagram_common;
  int resolution = 20;
  int diagram_l = 100;
  diagram->add_option("--resolution", resolution, "Simplex subdivisions per edge");
  diagram->add_option("--L", diagram_l, "Unit cells per direction for the gap");
  add_common(diagram, diagram_common, {"csv", "json"});
  diagram->callback([&] {
    action = [&] {
      const auto cells =
          phase_diagram_raster(resolution, LatticeSize(diagram_l), exec_of(diagram_common));
      Header h = make_header("phase-diagram");
      h.emplace_back("resolution", std::to_string(resolution));
      h.emplace_back("L", std::to_string(diagram_l));
      return Outcome{diagram_common.format == "json" ? raster_json(h, cells)
                                                     : raster_csv(h, cells)};
    };
  });

  std::vector<const char*> argv;
  argv.push_back("kitaev-mi");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  const std::string* output_path = nullptr;
  for (const Common* c : {&spectrum_common, &scan_common, &fit_common, &oracle_common,
                          &diagram_common}) {
    if (!c->output.empty()) output_path = &c->output;
  }

  Outcome outcome;
  try {
    outcome = action();
  } catch (const UsageError& e) {
    err << "kitaev-mi: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "kitaev-mi: " << e.what() << "\n";
    return kUsageError;
  } catch (const SizeGuardError& e) {
    err << "kitaev-mi: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "kitaev-mi: " << e.what() << "\n";
    return kCheckFailure;
  }

  if (output_path != nullptr) {
    std::ofstream file(*output_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << outcome.text) || !file.flush()) {
      err << "kitaev-mi: cannot write " << *output_path << "\n";
      return kCheckFailure;
    }
  } else {
    out << outcome.text;
  }
  return outcome.code;
}

}  // namespace kitaev::cli
