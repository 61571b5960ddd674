#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "attodress/config.hpp"

namespace attodress {

// Shortest representation that round-trips to the same double (at most 17
// significant digits). NaN is written as "nan".
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
  void add_numeric_row(const std::vector<double>& values);
};

void write_csv(const std::string& path, const Table& table);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal SVG line chart; non-finite points break the line.
void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series);

struct StageTiming {
  std::string stage;
  double seconds;
};

// Writes <dir>/manifest.json with the resolved configuration, the command,
// the code version, the wall time and per-stage timings.
void write_manifest(const std::string& dir, const Config& config, const std::string& command,
                    double wall_seconds, const std::vector<StageTiming>& stages);

std::string code_version();

// Creates the directory (and parents) if missing.
void ensure_directory(const std::string& dir);

}  // namespace attodress
