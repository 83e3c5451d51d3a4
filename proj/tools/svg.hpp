#pragma once

// Minimal deterministic SVG 1.1 line-plot emitter for the CLI. No plotting
// dependency: the CSV files are the contract, these are inspection aids.

#include <string>
#include <vector>

namespace fracred::tools {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct AxesSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Renders the series as polylines in a standalone SVG document. Output is
/// byte-identical for identical input. Throws std::invalid_argument when
/// no series or no drawable point is given, std::domain_error when a log
/// axis meets a non-positive coordinate.
std::string emit_svg(const std::vector<Series>& series, const AxesSpec& axes);

}  // namespace fracred::tools
