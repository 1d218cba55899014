// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace belldisc {

// Shortest round-trippable decimal ("%.10g"); keeps CSV output byte-stable
// for a given seed and config.
std::string format_double(double v);

// One data series of an XY chart.
struct SvgSeries {
    std::string label;
    std::string color;
    bool line = true;    // polyline through the points; otherwise markers only
    std::vector<std::pair<double, double>> points;
};

// Minimal self-contained SVG line/scatter chart (fixed 640x420 canvas).
void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series);

// Grouped vertical bars: one group per entry of `group_labels`, one bar per
// series; values in [0, 1].
struct SvgBarSeries {
    std::string label;
    std::string color;
    std::vector<double> values;
};

void write_svg_bars(std::ostream& out, const std::string& title,
                    const std::vector<std::string>& group_labels,
                    const std::vector<SvgBarSeries>& series);

}  // namespace belldisc
