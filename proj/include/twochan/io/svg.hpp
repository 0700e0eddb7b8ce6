#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "twochan/scattering.hpp"

namespace twochan::io {

namespace detail {

inline std::string coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline std::string gray_fill(double t) {
    const int level = int(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", level, level, level);
    return buf;
}

} // namespace detail

/// Deterministic SVG heatmap of a transmission grid: one rectangle per cell,
/// linear gray map from T = 0 (dark) to T = 1 (bright), a on the horizontal
/// axis, E on the vertical axis, optional vertical marker at a_cr.
inline std::string render_svg_heatmap(const TransmissionGrid& grid) {
    using detail::coord;
    const size_t na = grid.a_grid.size();
    const size_t ne = grid.e_grid.size();
    if (na == 0 || ne == 0) throw computation_error("render_svg_heatmap: empty grid");

    constexpr double plot_w = 640.0, plot_h = 480.0;
    constexpr double ml = 70.0, mt = 15.0, mr = 15.0, mb = 50.0;
    const double width = ml + plot_w + mr;
    const double height = mt + plot_h + mb;
    const double cell_w = plot_w / double(na);
    const double cell_h = plot_h / double(ne);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(width)
        << "\" height=\"" << coord(height) << "\" viewBox=\"0 0 " << coord(width) << ' '
        << coord(height) << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << coord(width) << "\" height=\"" << coord(height)
        << "\" fill=\"white\"/>\n";

    for (size_t ai = 0; ai < na; ++ai) {
        for (size_t ei = 0; ei < ne; ++ei) {
            const double x = ml + double(ai) * cell_w;
            const double y = mt + double(ne - 1 - ei) * cell_h; // E ascending upward
            svg << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" width=\""
                << coord(cell_w) << "\" height=\"" << coord(cell_h) << "\" fill=\""
                << detail::gray_fill(grid.at(ai, ei)) << "\"/>\n";
        }
    }

    // frame and axis labels
    svg << "<rect x=\"" << coord(ml) << "\" y=\"" << coord(mt) << "\" width=\"" << coord(plot_w)
        << "\" height=\"" << coord(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << coord(ml + plot_w / 2) << "\" y=\"" << coord(height - 8)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"16\">a</text>\n";
    svg << "<text x=\"14\" y=\"" << coord(mt + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"16\">E</text>\n";
    // tick labels: grid extremes
    svg << "<text x=\"" << coord(ml) << "\" y=\"" << coord(height - 28)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
        << coord(grid.a_grid.front()) << "</text>\n";
    svg << "<text x=\"" << coord(ml + plot_w) << "\" y=\"" << coord(height - 28)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
        << coord(grid.a_grid.back()) << "</text>\n";
    svg << "<text x=\"" << coord(ml - 6) << "\" y=\"" << coord(mt + plot_h)
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">"
        << coord(grid.e_grid.front()) << "</text>\n";
    svg << "<text x=\"" << coord(ml - 6) << "\" y=\"" << coord(mt + 10)
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">"
        << coord(grid.e_grid.back()) << "</text>\n";

    if (grid.a_cr_marker && na > 1) {
        const double a0 = grid.a_grid.front();
        const double a1 = grid.a_grid.back();
        const double frac = (*grid.a_cr_marker - a0) / (a1 - a0);
        if (frac >= 0.0 && frac <= 1.0) {
            const double x = ml + frac * plot_w;
            svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(mt) << "\" x2=\"" << coord(x)
                << "\" y2=\"" << coord(mt + plot_h)
                << "\" stroke=\"red\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
            svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(mt + plot_h + 16)
                << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
                   "fill=\"red\">a_cr</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace twochan::io
