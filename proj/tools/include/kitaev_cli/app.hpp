#pragma once

// Command-line front end for the kitaev-mi tool. run() is the whole program
// minus process plumbing, so tests can drive it in-process.

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kitaev/ed_oracle.hpp"
#include "kitaev/scan.hpp"

namespace kitaev::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailure = 1,
  kUsageError = 2,
};

/// Environment variable holding the default worker count (0 = all cores).
inline constexpr const char* kWorkersEnv = "KITAEV_MI_WORKERS";

/// args excludes the program name. Results go to out unless --output names
/// a file; diagnostics go to err. Nothing is written to an output file
/// unless the command succeeds or reaches a check verdict.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Decimal number or a fraction "p/q", e.g. "0.25" or "1/3".
std::optional<double> parse_number(std::string_view text);

/// Comma-separated integers ("40,50,60") or an inclusive range
/// "first:last:step" ("40:100:10").
std::optional<std::vector<int>> parse_int_list(std::string_view text);

/// Two comma-separated numbers "lo,hi" with lo < hi.
std::optional<JzWindow> parse_window(std::string_view text);

/// {"x": [[a,b],...], "y": [...], "z": [...]} with four pairs per family.
/// Throws std::invalid_argument on malformed input; a well-formed table is
/// accepted even if it is not a valid coloring (the oracle reports that).
ed::ClusterLinks parse_links_json(std::string_view text);

/// (L, peak) pairs from a CSV with columns L,peak. '#' lines and a header
/// row are skipped. Throws std::invalid_argument on malformed rows.
std::vector<std::pair<int, double>> parse_peaks_csv(std::string_view text);

}  // namespace kitaev::cli
