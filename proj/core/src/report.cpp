#include "attodress/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "attodress/errors.hpp"

#ifndef ATTODRESS_VERSION
#define ATTODRESS_VERSION "unknown"
#endif

namespace attodress {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

void Table::add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

void Table::add_numeric_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  rows.push_back(std::move(cells));
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series) {
  constexpr double width = 800, height = 500, left = 80, right = 160, top = 40, bottom = 60;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1, y_lo -= 1;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double plot_w = width - left - right, plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#000000", "#ff7f0e"};

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x_lo + k * (x_hi - x_lo) / 4, yv = y_lo + k * (y_hi - y_lo) / 4;
    out << "<text x=\"" << px(xv) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << format_double(std::round(xv * 1000) / 1000) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
        << format_double(std::round(yv * 10000) / 10000) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" transform=\"rotate(-90 20 "
      << top + plot_h / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % std::size(colors)];
    std::ostringstream d;
    bool pen_down = false;
    for (std::size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i) {
      const double x = series[s].x[i], y = series[s].y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) {
        pen_down = false;
        continue;
      }
      d << (pen_down ? " L" : " M") << px(x) << ' ' << py(y);
      pen_down = true;
    }
    out << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    const double ly = top + 16 + 18 * static_cast<double>(s);
    out << "<line x1=\"" << width - right + 10 << "\" y1=\"" << ly << "\" x2=\""
        << width - right + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << width - right + 36 << "\" y=\"" << ly + 4 << "\">" << series[s].label
        << "</text>\n";
  }
  out << "</svg>\n";
}

std::string code_version() { return ATTODRESS_VERSION; }

void write_manifest(const std::string& dir, const Config& config, const std::string& command,
                    double wall_seconds, const std::vector<StageTiming>& stages) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["code_version"] = code_version();
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config_entries(config)) cfg[key] = value;
  j["config"] = cfg;
  j["wall_time_s"] = wall_seconds;
  nlohmann::ordered_json timings = nlohmann::ordered_json::array();
  for (const auto& st : stages) timings.push_back({{"stage", st.stage}, {"seconds", st.seconds}});
  j["stages"] = timings;

  const std::string path = (std::filesystem::path(dir) / "manifest.json").string();
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory '" + dir + "': " + ec.message());
}

}  // namespace attodress
