#pragma once

#include <string>
#include <vector>

namespace impactlab {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string stroke = "#1f77b4";
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
};

/// Self-contained SVG line plot, one polyline per series. Throws on series
/// with fewer than 2 points or nonpositive values on a log axis (naming the
/// offending series and row).
std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec);

} // namespace impactlab
