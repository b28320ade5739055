#pragma once

#include <string>
#include <utility>
#include <vector>

namespace shs6v {

struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Minimal line chart: axes, ticks, one polyline per series. CSVs are the
/// data contract; these are a quick visual companion.
void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::string& xlabel, const std::string& ylabel,
                          const std::vector<SvgSeries>& series, bool logx = false,
                          bool logy = false);

}  // namespace shs6v
