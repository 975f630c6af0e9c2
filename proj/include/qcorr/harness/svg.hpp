#pragma once

// Static SVG rendering of harness CSV output. Presentational only.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/harness/csv.hpp"

namespace qcorr::harness {

enum class PlotStyle { Points, Lines };

struct AxesSpec {
  std::string x_column;
  std::string y_column;
  std::string x_label;
  std::string y_label;
  /// Column whose values split rows into separately coloured series.
  std::string group_column;
  PlotStyle style = PlotStyle::Points;
  /// Draw the reference line y = x.
  bool diagonal = false;
};

namespace detail {

struct Series {
  std::vector<std::pair<double, double>> points;
};

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                           "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace detail

/// Renders a table as an SVG document. Throws MalformedCsv when the columns
/// are missing or no row has both coordinates.
inline std::string render_svg(const CsvTable& table, const AxesSpec& axes) {
  const auto xi = table.column(axes.x_column);
  const auto yi = table.column(axes.y_column);
  if (!xi) throw MalformedCsv("no column '" + axes.x_column + "'");
  if (!yi) throw MalformedCsv("no column '" + axes.y_column + "'");
  std::optional<std::size_t> gi;
  if (!axes.group_column.empty()) {
    gi = table.column(axes.group_column);
    if (!gi) throw MalformedCsv("no column '" + axes.group_column + "'");
  }

  std::map<std::string, detail::Series> series;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  std::size_t count = 0;
  for (const auto& row : table.rows) {
    const auto x = parse_number(row[*xi]);
    const auto y = parse_number(row[*yi]);
    if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) continue;
    series[gi ? row[*gi] : std::string()].points.emplace_back(*x, *y);
    xmin = std::min(xmin, *x);
    xmax = std::max(xmax, *x);
    ymin = std::min(ymin, *y);
    ymax = std::max(ymax, *y);
    ++count;
  }
  if (count == 0) throw MalformedCsv("no plottable rows");

  constexpr double W = 640, H = 480, L = 70, R = 20, T = 20, B = 60;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<g stroke=\"black\" stroke-width=\"1\">"
    << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>"
    << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << L << "\" y2=\"" << T << "\"/></g>\n";
  o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0, fy = ymin + (ymax - ymin) * i / 5.0;
    o << "<text x=\"" << sx(fx) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
      << format_double(std::round(fx * 1000) / 1000) << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << sy(fy) + 4 << "\" text-anchor=\"end\">"
      << format_double(std::round(fy * 1000) / 1000) << "</text>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"14\">"
    << detail::xml_escape(axes.x_label.empty() ? axes.x_column : axes.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << (T + H - B) / 2
    << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"14\">"
    << detail::xml_escape(axes.y_label.empty() ? axes.y_column : axes.y_label) << "</text>\n";
  o << "</g>\n";

  if (axes.diagonal) {
    const double lo = std::max(xmin, ymin), hi = std::min(xmax, ymax);
    o << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(hi)
      << "\" stroke=\"#d62728\" stroke-dasharray=\"6,4\"/>\n";
  }

  std::size_t colour = 0;
  double legend_y = T + 10;
  for (auto& [name, s] : series) {
    const char* c = detail::kPalette[colour++ % std::size(detail::kPalette)];
    if (axes.style == PlotStyle::Lines) {
      std::sort(s.points.begin(), s.points.end());
      o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) o << sx(x) << ',' << sy(y) << ' ';
      o << "\"/>\n";
    } else {
      o << "<g fill=\"" << c << "\" fill-opacity=\"0.5\">\n";
      for (const auto& [x, y] : s.points)
        o << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"1.2\"/>\n";
      o << "</g>\n";
    }
    if (!name.empty()) {
      o << "<text x=\"" << W - R - 100 << "\" y=\"" << legend_y << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
        << c << "\">" << detail::xml_escape(name) << "</text>\n";
      legend_y += 14;
    }
  }
  o << "</svg>\n";
  return o.str();
}

/// Reads `csv_path` and writes the plot to `svg_path`. Nothing is written
/// when the CSV cannot be plotted.
inline void emit_svg_scatter(const std::string& csv_path, const AxesSpec& axes,
                             const std::string& svg_path) {
  const std::string svg = render_svg(read_csv(csv_path), axes);
  std::ofstream out(svg_path);
  if (!out) throw IoError("cannot write " + svg_path);
  out << svg;
  if (!out) throw IoError("write failed for " + svg_path);
}

}  // namespace qcorr::harness
