#include "attrib/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace attrib::svg {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (v == std::floor(v) && std::fabs(v) < 1e6) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.3g", v);
  }
  return buf;
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

std::string line_chart(const Chart& chart, const std::vector<Series>& series) {
  std::size_t longest = 0;
  for (const auto& s : series) longest = std::max(longest, s.label.size());
  // legend swatch + ~7px per glyph at 12px sans
  const double left = 80, right = std::max(170.0, 50.0 + 7.0 * longest), top = 40, bottom = 60;
  const double width = chart.width + (right - 170.0);
  const double pw = width - left - right, ph = chart.height - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      double y = s.y[i];
      if (chart.log_y) {
        if (!(y > 0)) continue;
        y = std::log10(y);
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (chart.log_y) {
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
  }
  if (ymax == ymin) ymax = ymin + 1;

  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << chart.height
     << "\" viewBox=\"0 0 " << num(width) << ' ' << chart.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(chart.title) << "</text>\n";

  // grid + ticks
  const int xticks = 6;
  for (int i = 0; i <= xticks; ++i) {
    const double x = xmin + (xmax - xmin) * i / xticks;
    os << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px(x)) << "\" y2=\""
       << num(top + ph) << "\" stroke=\"#eeeeee\"/>\n";
    os << "<text x=\"" << num(px(x)) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
       << tick_label(std::round(x * 100) / 100) << "</text>\n";
  }
  const int ysteps = chart.log_y ? static_cast<int>(ymax - ymin) : 5;
  const int ystride = std::max(1, ysteps / 8);
  for (int i = 0; i <= ysteps; i += ystride) {
    const double y = ymin + (ymax - ymin) * i / ysteps;
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(y)) << "\" x2=\"" << num(left + pw) << "\" y2=\""
       << num(py(y)) << "\" stroke=\"#eeeeee\"/>\n";
    const std::string label = chart.log_y ? "1e" + tick_label(y) : tick_label(y);
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">" << label
       << "</text>\n";
  }
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(chart.height - 15.0)
     << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(chart.y_label) << (chart.log_y ? " (log scale)" : "") << "</text>\n";

  std::size_t colour = 0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    // A dashed series reuses the colour of the series it follows.
    const char* stroke = kPalette[(s.dashed && colour > 0 ? colour - 1 : colour) % 8];
    if (!s.dashed) ++colour;
    std::ostringstream pts;
    bool any = false;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      double y = s.y[i];
      if (chart.log_y) {
        if (!(y > 0)) continue;
        y = std::log10(y);
      }
      pts << (any ? " " : "") << num(px(s.x[i])) << ',' << num(py(y));
      any = true;
    }
    if (any) {
      os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << (s.dashed ? "1.5" : "2")
         << '"' << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts.str() << "\"/>\n";
    }
    const double ly = top + 10 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << num(left + pw + 10) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + pw + 34)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << stroke << "\" stroke-width=\"2\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    os << "<text x=\"" << num(left + pw + 40) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace attrib::svg
