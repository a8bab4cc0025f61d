#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cosparse {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Renders a fixed 800x600 line chart: axes with ticks, one polyline per
// series, a legend, and optional annotation lines (used for series that are
// absent for a stated reason). All numbers are formatted with %.6g so the
// output is byte-stable across runs.
std::string render_line_chart(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel,
                              const std::vector<PlotSeries>& series,
                              const std::vector<std::string>& annotations = {});

}  // namespace cosparse
