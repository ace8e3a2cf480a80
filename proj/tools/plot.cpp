#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace polariton::cli {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void take(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finalize() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double pad = 0.03 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

}  // namespace

void write_svg_lines(const std::filesystem::path& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series) {
  constexpr double width = 720, height = 480;
  constexpr double left = 76, right = 696, top = 44, bottom = 430;

  Range rx, ry;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("write_svg_lines: series axis sizes differ");
    }
    for (double v : s.x) rx.take(v);
    for (double v : s.y) ry.take(v);
  }
  rx.finalize();
  ry.finalize();
  const auto px = [&](double v) { return left + rx.frac(v) * (right - left); };
  const auto py = [&](double v) { return bottom - ry.frac(v) * (bottom - top); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write plot " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // Frame and ticks.
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
      << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double f = static_cast<double>(i) / nticks;
    const double xv = rx.lo + f * (rx.hi - rx.lo);
    const double yv = ry.lo + f * (ry.hi - ry.lo);
    const double xp = left + f * (right - left);
    const double yp = bottom - f * (bottom - top);
    out << "<line x1=\"" << fmt(xp, "%.2f") << "\" y1=\"" << bottom << "\" x2=\""
        << fmt(xp, "%.2f") << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(xp, "%.2f") << "\" y=\"" << bottom + 19
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(xv) << "</text>\n"
        << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt(yp, "%.2f") << "\" x2=\""
        << left << "\" y2=\"" << fmt(yp, "%.2f") << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << left - 8 << "\" y=\"" << fmt(yp + 4, "%.2f")
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(yv) << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xlabel << "</text>\n"
      << "<text x=\"18\" y=\"" << (top + bottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " << (top + bottom) / 2 << ")\">" << ylabel
      << "</text>\n";

  for (size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
           "points=\"";
    for (size_t i = 0; i < series[k].x.size(); ++i) {
      if (!std::isfinite(series[k].x[i]) || !std::isfinite(series[k].y[i])) continue;
      out << fmt(px(series[k].x[i]), "%.2f") << "," << fmt(py(series[k].y[i]), "%.2f")
          << " ";
    }
    out << "\"/>\n";
    if (!series[k].label.empty()) {
      const double ly = top + 16 + 16 * static_cast<double>(k);
      out << "<line x1=\"" << right - 130 << "\" y1=\"" << ly - 4 << "\" x2=\""
          << right - 106 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << right - 100 << "\" y=\"" << ly
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[k].label
          << "</text>\n";
    }
  }
  out << "</svg>\n";
}

void write_pgm_heatmap(const std::filesystem::path& path, const Eigen::MatrixXd& values) {
  if (values.size() == 0) throw std::invalid_argument("write_pgm_heatmap: empty matrix");
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write plot " + path.string());
  out << "P2\n" << values.cols() << " " << values.rows() << "\n255\n";
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const int g = static_cast<int>(std::lround(255.0 * (values(r, c) - lo) / span));
      out << std::clamp(g, 0, 255) << (c + 1 == values.cols() ? "\n" : " ");
    }
  }
}

}  // namespace polariton::cli
