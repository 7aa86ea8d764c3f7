#include "vocbench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "vocbench/errors.hpp"

namespace vocbench {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 52.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#d62728", "#2ca02c",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x == 0.0 ? 0.0 : x);  // no "-0.000"
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Vertices of the curve restricted to [0, omega_max].
std::vector<std::pair<double, double>> vertices(const VocCurve& curve, double omega_max) {
  std::vector<std::pair<double, double>> pts;
  const auto& pieces = curve.pieces();
  std::size_t active = 0;
  for (std::size_t i = 0; i < pieces.size() && pieces[i].omega_start <= omega_max; ++i) {
    pts.emplace_back(pieces[i].omega_start, pieces[i].line.at(pieces[i].omega_start));
    active = i;
  }
  if (pts.back().first < omega_max) pts.emplace_back(omega_max, pieces[active].line.at(omega_max));
  return pts;
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_voc_svg(std::span<const PlotSeries> series, double omega_max,
                           std::string_view title) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
    throw DataError("plot range omega_max must be finite and > 0");
  }
  std::vector<std::vector<std::pair<double, double>>> polylines;
  double y_lo = 0.0;
  double y_hi = 1.0;
  for (const auto& s : series) {
    polylines.push_back(vertices(s.curve, omega_max));
    for (const auto& [x, y] : polylines.back()) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  const double y_step = nice_step(y_hi - y_lo);
  y_lo = std::floor(y_lo / y_step) * y_step;
  y_hi = std::ceil(y_hi / y_step) * y_step;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + x / omega_max * plot_w; };
  const auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kTop / 2 + 6)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n";

  // grid and ticks
  const double x_step = nice_step(omega_max);
  for (double x = 0.0; x <= omega_max * (1 + 1e-12); x += x_step) {
    out << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(px(x))
        << "\" y2=\"" << fmt(kTop + plot_h) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
  }
  for (double y = y_lo; y <= y_hi + y_step * 1e-9; y += y_step) {
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(py(y)) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(py(y)) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(y) + 4)
        << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(py(0.0)) << "\" x2=\""
      << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(py(0.0)) << "\" stroke=\"black\"/>\n";
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 12)
      << "\" text-anchor=\"middle\">penalty \xcf\x89</text>\n";
  out << "<text x=\"16\" y=\"" << fmt(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt(kTop + plot_h / 2) << ")\">value per sample</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < polylines[s].size(); ++i) {
      if (i) out << ' ';
      out << fmt(px(polylines[s][i].first)) << ',' << fmt(py(polylines[s][i].second));
    }
    out << "\"/>\n";
    const double ly = kTop + 12 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << fmt(kWidth - kRight + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(kWidth - kRight + 32) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(kWidth - kRight + 38) << "\" y=\"" << fmt(ly + 4) << "\">"
        << escape(series[s].label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace vocbench
