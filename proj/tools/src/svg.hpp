#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace radarint::cli {

struct Series {
  enum class Style { Line, Markers, Bars };
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  ///< +inf is drawn as an off-scale marker
  Style style = Style::Line;
};

struct ReferenceLine {
  std::string label;
  double y = 0.0;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
  std::vector<ReferenceLine> reference_lines;
  /// When set, x values are indices into these tick labels.
  std::vector<std::string> x_categories;
};

/// Standalone SVG document: axes, ticks, legend, no external resources.
std::string render_svg(const Plot& plot);
void write_svg(const std::filesystem::path& path, const Plot& plot);

}  // namespace radarint::cli
