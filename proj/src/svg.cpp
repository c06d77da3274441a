#include "dsrkit/svg.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace dsrkit {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 770.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 420.0;
constexpr double kDbMin = -80.0;
constexpr double kDbMax = 5.0;

void appendf(std::string& out, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace

std::string sweep_svg(const SweepResult& sr, const std::string& title) {
  const std::size_t n = sr.grid.size();
  if (n < 2 || sr.dm.size() != n || sr.cm.size() != n) {
    throw std::invalid_argument("sweep is too short or inconsistent");
  }
  const double f_lo = sr.grid.front() / 1e9;
  const double f_hi = sr.grid.back() / 1e9;
  const auto x_of = [&](double f_ghz) {
    return kLeft + (f_ghz - f_lo) / (f_hi - f_lo) * (kRight - kLeft);
  };
  const auto y_of = [&](double db) {
    const double v = std::clamp(db, kDbMin, kDbMax);
    return kTop + (kDbMax - v) / (kDbMax - kDbMin) * (kBottom - kTop);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"480\" viewBox=\"0 0 800 480\">\n";
  out += "<rect width=\"800\" height=\"480\" fill=\"white\"/>\n";
  appendf(out,
          "<text x=\"%.1f\" y=\"24\" font-family=\"sans-serif\" "
          "font-size=\"16\" text-anchor=\"middle\">%s</text>\n",
          kWidth / 2, title.c_str());

  // Axes box and grid lines.
  appendf(out,
          "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
          "fill=\"none\" stroke=\"black\"/>\n",
          kLeft, kTop, kRight - kLeft, kBottom - kTop);
  for (int db = -80; db <= 0; db += 20) {
    const double y = y_of(db);
    appendf(out,
            "<line x1=\"%.1f\" y1=\"%.2f\" x2=\"%.1f\" y2=\"%.2f\" "
            "stroke=\"#dddddd\"/>\n",
            kLeft, y, kRight, y);
    appendf(out,
            "<text x=\"%.1f\" y=\"%.2f\" font-family=\"sans-serif\" "
            "font-size=\"11\" text-anchor=\"end\">%d</text>\n",
            kLeft - 6.0, y + 4.0, db);
  }
  for (int i = 0; i <= 5; ++i) {
    const double f = f_lo + (f_hi - f_lo) * i / 5.0;
    const double x = x_of(f);
    appendf(out,
            "<line x1=\"%.2f\" y1=\"%.1f\" x2=\"%.2f\" y2=\"%.1f\" "
            "stroke=\"#dddddd\"/>\n",
            x, kTop, x, kBottom);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.1f\" font-family=\"sans-serif\" "
            "font-size=\"11\" text-anchor=\"middle\">%.3f</text>\n",
            x, kBottom + 16.0, f);
  }
  appendf(out,
          "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
          "font-size=\"12\" text-anchor=\"middle\">frequency (GHz)</text>\n",
          (kLeft + kRight) / 2, kBottom + 36.0);
  appendf(out,
          "<text x=\"16\" y=\"%.1f\" font-family=\"sans-serif\" "
          "font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
          "%.1f)\">|s21| (dB)</text>\n",
          (kTop + kBottom) / 2, (kTop + kBottom) / 2);

  const auto polyline = [&](const std::vector<SParams2>& pts,
                            const char* color) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      appendf(out, "%s%.2f,%.2f", i == 0 ? "" : " ", x_of(sr.grid[i] / 1e9),
              y_of(mag_db(pts[i].s21)));
    }
    out += "\"/>\n";
  };
  polyline(sr.dm, "#1f77b4");
  polyline(sr.cm, "#d62728");

  // Legend.
  appendf(out,
          "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
          "stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n",
          kRight - 150.0, kTop + 14.0, kRight - 120.0, kTop + 14.0);
  appendf(out,
          "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
          "font-size=\"11\">differential |sdd21|</text>\n",
          kRight - 114.0, kTop + 18.0);
  appendf(out,
          "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
          "stroke=\"#d62728\" stroke-width=\"1.5\"/>\n",
          kRight - 150.0, kTop + 32.0, kRight - 120.0, kTop + 32.0);
  appendf(out,
          "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
          "font-size=\"11\">common |scc21|</text>\n",
          kRight - 114.0, kTop + 36.0);

  out += "</svg>\n";
  return out;
}

}  // namespace dsrkit
