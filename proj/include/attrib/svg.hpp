#pragma once

#include <string>
#include <vector>

namespace attrib::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = true;
  int width = 720;
  int height = 440;
};

/// Line chart; non-positive y values are skipped on a log axis.
std::string line_chart(const Chart& chart, const std::vector<Series>& series);

std::string escape(const std::string& text);

}  // namespace attrib::svg
