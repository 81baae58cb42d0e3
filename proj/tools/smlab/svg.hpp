#pragma once

#include <span>
#include <string>

namespace smlab::cli {

struct PlotLabels {
    std::string title;
    std::string x;
    std::string y;
};

/// A single polyline with axes and min/max tick labels. Deterministic output.
std::string line_plot_svg(std::span<const double> xs, std::span<const double> ys, const PlotLabels& labels);

}  // namespace smlab::cli
