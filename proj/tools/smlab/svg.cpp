#include "smlab/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "smlab/errors.hpp"
#include "smlab/io.hpp"

namespace smlab::cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string line_plot_svg(std::span<const double> xs, std::span<const double> ys, const PlotLabels& labels) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw InvalidArgument("plot needs equally sized, nonempty series");
    }
    auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
    double x0 = *xmin_it, x1 = *xmax_it, y0 = *ymin_it, y1 = *ymax_it;
    if (x1 - x0 < 1e-12) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (y1 - y0 < 1e-12) {
        y0 -= 0.05;
        y1 += 0.05;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(labels.title)
        << "</text>\n";
    // axes
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph
        << "\" stroke=\"black\"/>\n";
    // tick labels at the extremes
    svg << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">" << format_number(x0)
        << "</text>\n";
    svg << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">"
        << format_number(x1) << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph + 4 << "\" text-anchor=\"end\">" << format_number(y0)
        << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 4 << "\" text-anchor=\"end\">" << format_number(y1)
        << "</text>\n";
    svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
        << escape(labels.x) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kTop + ph / 2 << ")\">" << escape(labels.y) << "</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        svg << (i ? " " : "") << fmt(sx(xs[i])) << ',' << fmt(sy(ys[i]));
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

}  // namespace smlab::cli
