#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "radarint/error.hpp"

namespace radarint::cli {

namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 200;  // room for the legend
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
  double pixel_lo = 0.0;
  double pixel_hi = 1.0;

  double map(double v) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

}  // namespace

std::string render_svg(const Plot& plot) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  bool any_bars = false;

  // Data ranges over finite values only.
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto take_y = [&](double y) {
    if (!std::isfinite(y) || (plot.log_y && y <= 0.0)) return;
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& s : plot.series) {
    any_bars = any_bars || s.style == Series::Style::Bars;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      take_y(s.y[i]);
    }
  }
  for (const auto& r : plot.reference_lines) take_y(r.y);

  Axis ax;
  ax.pixel_lo = kLeft;
  ax.pixel_hi = kLeft + plot_w;
  if (!plot.x_categories.empty()) {
    xmin = 0.0;
    xmax = static_cast<double>(plot.x_categories.size()) - 1.0;
  }
  if (!(xmin <= xmax)) xmin = 0.0, xmax = 1.0;
  if (any_bars || !plot.x_categories.empty()) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (xmin == xmax) xmin -= 1.0, xmax += 1.0;
  ax.lo = xmin;
  ax.hi = xmax;

  Axis ay;
  ay.log = plot.log_y;
  ay.pixel_lo = kTop + plot_h;
  ay.pixel_hi = kTop;
  if (!(ymin <= ymax)) ymin = plot.log_y ? 1.0 : 0.0, ymax = plot.log_y ? 10.0 : 1.0;
  if (plot.log_y) {
    ay.lo = std::floor(std::log10(ymin));
    ay.hi = std::ceil(std::log10(ymax));
    if (ay.lo == ay.hi) ay.lo -= 1.0, ay.hi += 1.0;
  } else {
    ay.lo = std::min(0.0, ymin);
    ay.hi = ymax > ay.lo ? ymax * 1.05 : ay.lo + 1.0;
  }

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(plot.title) << "</text>\n";
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
    << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Y ticks.
  if (plot.log_y) {
    for (double e = ay.lo; e <= ay.hi; e += 1.0) {
      const double py = ay.map(std::pow(10.0, e));
      o << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + plot_w) << "\" y1=\"" << num(py)
        << "\" y2=\"" << num(py) << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = ay.lo + (ay.hi - ay.lo) * i / 5.0;
      const double py = ay.map(v);
      o << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + plot_w) << "\" y1=\"" << num(py)
        << "\" y2=\"" << num(py) << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
        << tick_label(v) << "</text>\n";
    }
  }

  // X ticks.
  if (!plot.x_categories.empty()) {
    for (std::size_t i = 0; i < plot.x_categories.size(); ++i) {
      o << "<text x=\"" << num(ax.map(static_cast<double>(i))) << "\" y=\"" << num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << escape(plot.x_categories[i]) << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = ax.lo + (ax.hi - ax.lo) * i / 5.0;
      o << "<text x=\"" << num(ax.map(v)) << "\" y=\"" << num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
    }
  }
  o << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 18)
    << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << num(kTop + plot_h / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  // Reference lines.
  for (const auto& r : plot.reference_lines) {
    if (plot.log_y && r.y <= 0.0) continue;
    const double py = ay.map(r.y);
    if (py < kTop || py > kTop + plot_h) continue;
    o << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + plot_w) << "\" y1=\"" << num(py)
      << "\" y2=\"" << num(py) << "\" stroke=\"#555\" stroke-dasharray=\"6,4\"/>\n";
    o << "<text x=\"" << num(kLeft + plot_w - 4) << "\" y=\"" << num(py - 4)
      << "\" text-anchor=\"end\" fill=\"#555\">" << escape(r.label) << "</text>\n";
  }

  // Series.
  const std::size_t n_series = plot.series.size();
  const double bar_slot = (ax.map(1.0) - ax.map(0.0)) * 0.8;
  for (std::size_t k = 0; k < n_series; ++k) {
    const auto& s = plot.series[k];
    const std::string color = kColors[k % std::size(kColors)];
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const double px = ax.map(s.x[i]);
      const double y = s.y[i];
      if (std::isinf(y) && y > 0) {
        // Off the top of the scale: an upward triangle on the frame.
        o << "<path d=\"M" << num(px - 5) << ' ' << num(kTop + 8) << " L" << num(px + 5) << ' '
          << num(kTop + 8) << " L" << num(px) << ' ' << num(kTop) << " Z\" fill=\"" << color
          << "\"><title>inf</title></path>\n";
        continue;
      }
      if (!std::isfinite(y) || (plot.log_y && y <= 0.0)) continue;
      const double py = ay.map(y);
      if (s.style == Series::Style::Bars) {
        const double w = bar_slot / static_cast<double>(std::max<std::size_t>(n_series, 1));
        const double x0 = px - bar_slot / 2 + w * static_cast<double>(k);
        const double base = ay.map(plot.log_y ? std::pow(10.0, ay.lo) : std::max(ay.lo, 0.0));
        o << "<rect x=\"" << num(x0) << "\" y=\"" << num(std::min(py, base)) << "\" width=\""
          << num(w) << "\" height=\"" << num(std::abs(base - py)) << "\" fill=\"" << color
          << "\"/>\n";
        continue;
      }
      o << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"3\" fill=\"" << color
        << "\"/>\n";
    }
    if (s.style == Series::Style::Line) {
      // The polyline breaks at points that cannot be drawn.
      std::string d;
      bool pen = false;
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        const double y = s.y[i];
        if (!std::isfinite(y) || (plot.log_y && y <= 0.0)) {
          pen = false;
          continue;
        }
        d += (pen ? " L" : (d.empty() ? "M" : " M")) + num(ax.map(s.x[i])) + " " + num(ay.map(y));
        pen = true;
      }
      if (!d.empty()) {
        o << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
      }
    }
  }

  // Legend.
  double ly = kTop + 8;
  for (std::size_t k = 0; k < n_series; ++k) {
    const std::string color = kColors[k % std::size(kColors)];
    o << "<rect x=\"" << num(kLeft + plot_w + 14) << "\" y=\"" << num(ly - 8)
      << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    o << "<text x=\"" << num(kLeft + plot_w + 30) << "\" y=\"" << num(ly + 1) << "\">"
      << escape(plot.series[k].label) << "</text>\n";
    ly += 16;
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const std::filesystem::path& path, const Plot& plot) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << render_svg(plot);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace radarint::cli
