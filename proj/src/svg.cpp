#include "shs6v/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "shs6v/csv.hpp"

namespace shs6v {

namespace {

constexpr double kW = 640, kH = 440;
constexpr double kL = 70, kR = 20, kT = 40, kB = 50;  // margins

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

double tr(double v, bool log_scale) {
  if (!log_scale) return v;
  if (v <= 0.0) throw std::invalid_argument("svg chart: log scale needs positive values");
  return std::log10(v);
}

std::string fmt_tick(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::string& xlabel, const std::string& ylabel,
                          const std::vector<SvgSeries>& series, bool logx, bool logy) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, tr(x, logx));
      xmax = std::max(xmax, tr(x, logx));
      ymin = std::min(ymin, tr(y, logy));
      ymax = std::max(ymax, tr(y, logy));
    }
  if (xmin > xmax) throw std::invalid_argument("svg chart: no data");
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  auto px = [&](double x) { return kL + (tr(x, logx) - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto py = [&](double y) {
    return kH - kB - (tr(y, logy) - ymin) / (ymax - ymin) * (kH - kT - kB);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";

  // frame and ticks
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
     << kH - kT - kB << "\" fill=\"none\" stroke=\"#444\"/>\n";
  const int nticks = 5;
  for (int k = 0; k <= nticks; ++k) {
    const double fx = xmin + (xmax - xmin) * k / nticks;
    const double fy = ymin + (ymax - ymin) * k / nticks;
    const double gx = kL + (kW - kL - kR) * k / nticks;
    const double gy = kH - kB - (kH - kT - kB) * k / nticks;
    const double vx = logx ? std::pow(10.0, fx) : fx;
    const double vy = logy ? std::pow(10.0, fy) : fy;
    os << "<line x1=\"" << gx << "\" y1=\"" << kH - kB << "\" x2=\"" << gx << "\" y2=\""
       << kH - kB + 5 << "\" stroke=\"#444\"/>\n"
       << "<text x=\"" << gx << "\" y=\"" << kH - kB + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_tick(vx) << "</text>\n"
       << "<line x1=\"" << kL - 5 << "\" y1=\"" << gy << "\" x2=\"" << kL << "\" y2=\"" << gy
       << "\" stroke=\"#444\"/>\n"
       << "<text x=\"" << kL - 8 << "\" y=\"" << gy + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_tick(vy) << "</text>\n";
  }
  os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n"
     << "<text x=\"16\" y=\"" << (kT + kH - kB) / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
     << (kT + kH - kB) / 2 << ")\">" << ylabel << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kColors[si % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (const auto& [x, y] : series[si].points) os << px(x) << ',' << py(y) << ' ';
    os << "\"/>\n";
    for (const auto& [x, y] : series[si].points)
      os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.6\" fill=\"" << color
         << "\"/>\n";
    os << "<text x=\"" << kW - kR - 6 << "\" y=\"" << kT + 16 + 16 * si
       << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << series[si].name
       << "</text>\n";
  }
  os << "</svg>\n";
  write_text_file(path, os.str());
}

}  // namespace shs6v
