#include "svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "dwell/errors.hpp"

namespace dwell::cli {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;

std::string px(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  if (ec != std::errc{}) return "0";
  return std::string(buf, p);
}

std::string tick_label(double v) {
  if (std::fabs(v) < 1e-300) v = 0.0;  // avoid "-0"
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  if (ec != std::errc{}) return "?";
  return std::string(buf, p);
}

struct Range {
  double lo, hi;
  double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    double c = lo;
    lo = c - 1.0;
    hi = c + 1.0;
  }
  double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_line_plot(const CsvTable& table, const PlotSpec& spec) {
  int xi = table.column_index(spec.x_col);
  if (xi < 0) throw domain_error("plot: no column named '" + spec.x_col + "'");
  int yi = table.column_index(spec.y_col);
  if (yi < 0) throw domain_error("plot: no column named '" + spec.y_col + "'");
  int y2i = -1;
  if (!spec.y2_col.empty()) {
    y2i = table.column_index(spec.y2_col);
    if (y2i < 0) throw domain_error("plot: no column named '" + spec.y2_col + "'");
  }
  if (table.rows.empty()) throw domain_error("plot: no data rows");

  double xlo = table.rows[0][xi], xhi = xlo, ylo = table.rows[0][yi], yhi = ylo;
  for (const auto& r : table.rows) {
    xlo = std::min(xlo, r[xi]);
    xhi = std::max(xhi, r[xi]);
    for (int col : {yi, y2i}) {
      if (col < 0) continue;
      ylo = std::min(ylo, r[col]);
      yhi = std::max(yhi, r[col]);
    }
  }
  if (spec.has_hline) {
    ylo = std::min(ylo, spec.hline);
    yhi = std::max(yhi, spec.hline);
  }
  Range rx = padded(xlo, xhi), ry = padded(ylo, yhi);

  auto X = [&](double v) { return rx.map(v, kLeft, kWidth - kRight); };
  auto Y = [&](double v) { return ry.map(v, kHeight - kBottom, kTop); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
  s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";

  // frame and ticks
  s += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(kWidth - kLeft - kRight) +
       "\" height=\"" + px(kHeight - kTop - kBottom) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
    double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
    s += "<line x1=\"" + px(X(fx)) + "\" y1=\"" + px(kHeight - kBottom) + "\" x2=\"" + px(X(fx)) + "\" y2=\"" +
         px(kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + px(X(fx)) + "\" y=\"" + px(kHeight - kBottom + 18) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + tick_label(fx) + "</text>\n";
    s += "<line x1=\"" + px(kLeft - 5) + "\" y1=\"" + px(Y(fy)) + "\" x2=\"" + px(kLeft) + "\" y2=\"" + px(Y(fy)) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(Y(fy) + 4) +
         "\" font-size=\"11\" text-anchor=\"end\">" + tick_label(fy) + "</text>\n";
  }
  s += "<text x=\"" + px((kLeft + kWidth - kRight) / 2) + "\" y=\"" + px(kHeight - 8) +
       "\" font-size=\"13\" text-anchor=\"middle\">" + spec.x_col + "</text>\n";
  std::string ylabel = spec.y_col + (y2i >= 0 ? ", " + spec.y2_col : "");
  s += "<text x=\"14\" y=\"" + px(kHeight / 2) + "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
       px(kHeight / 2) + ")\">" + ylabel + "</text>\n";

  if (spec.has_hline) {
    s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(Y(spec.hline)) + "\" x2=\"" + px(kWidth - kRight) + "\" y2=\"" +
         px(Y(spec.hline)) + "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
  }

  const char* colors[2] = {"#1f77b4", "#d62728"};
  int ci = 0;
  for (int col : {yi, y2i}) {
    if (col < 0) continue;
    s += "<polyline fill=\"none\" stroke=\"";
    s += colors[ci++];
    s += "\" stroke-width=\"1.2\" points=\"";
    for (size_t r = 0; r < table.rows.size(); ++r) {
      if (r) s += ' ';
      s += px(X(table.rows[r][xi]));
      s += ',';
      s += px(Y(table.rows[r][col]));
    }
    s += "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace dwell::cli
