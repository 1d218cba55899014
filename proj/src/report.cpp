// SPDX-License-Identifier: Apache-2.0
#include "belldisc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace belldisc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 55.0;

struct Frame {
    double x_min, x_max, y_min, y_max;
    double px(double x) const {
        return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
    }
    double py(double y) const {
        return kHeight - kBottom - (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
    }
};

void svg_header(std::ostream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
}

void svg_axes(std::ostream& out, const Frame& f, const std::string& x_label,
              const std::string& y_label) {
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xt = f.x_min + (f.x_max - f.x_min) * i / 5.0;
        const double yt = f.y_min + (f.y_max - f.y_min) * i / 5.0;
        out << "<line x1=\"" << f.px(xt) << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
            << f.px(xt) << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << f.px(xt) << "\" y=\"" << kHeight - kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(std::round(xt * 1000.0) / 1000.0) << "</text>\n"
            << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << f.py(yt) << "\" x2=\"" << kLeft
            << "\" y2=\"" << f.py(yt) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 9 << "\" y=\"" << f.py(yt) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(std::round(yt * 1000.0) / 1000.0) << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (kTop + kHeight - kBottom) / 2 << ")\">" << y_label
        << "</text>\n";
}

}  // namespace

void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series) {
    Frame f{0.0, 1.0, 0.0, 1.0};
    bool first = true;
    for (const SvgSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                f = Frame{x, x, y, y};
                first = false;
            }
            f.x_min = std::min(f.x_min, x);
            f.x_max = std::max(f.x_max, x);
            f.y_min = std::min(f.y_min, y);
            f.y_max = std::max(f.y_max, y);
        }
    }
    if (f.x_max == f.x_min) f.x_max = f.x_min + 1.0;
    if (f.y_max == f.y_min) f.y_max = f.y_min + 1.0;

    svg_header(out, title);
    svg_axes(out, f, x_label, y_label);
    double legend_y = kTop + 14.0;
    for (const SvgSeries& s : series) {
        if (s.line && s.points.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points) out << f.px(x) << ',' << f.py(y) << ' ';
            out << "\"/>\n";
        } else {
            for (const auto& [x, y] : s.points)
                out << "<circle cx=\"" << f.px(x) << "\" cy=\"" << f.py(y)
                    << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
        out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << s.color << "\">" << s.label << "</text>\n";
        legend_y += 16.0;
    }
    out << "</svg>\n";
}

void write_svg_bars(std::ostream& out, const std::string& title,
                    const std::vector<std::string>& group_labels,
                    const std::vector<SvgBarSeries>& series) {
    svg_header(out, title);
    Frame f{0.0, static_cast<double>(group_labels.size()), 0.0, 1.0};
    svg_axes(out, f, "", "rate");
    // Overwrite the x tick labels with group names.
    out << "<rect x=\"0\" y=\"" << kHeight - kBottom + 6 << "\" width=\"" << kWidth
        << "\" height=\"22\" fill=\"white\"/>\n";
    const double group_w = (kWidth - kLeft - kRight) / static_cast<double>(group_labels.size());
    const double bar_w = group_w * 0.8 / static_cast<double>(series.size());
    for (std::size_t g = 0; g < group_labels.size(); ++g) {
        const double gx = kLeft + group_w * (static_cast<double>(g) + 0.5);
        out << "<text x=\"" << gx << "\" y=\"" << kHeight - kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << group_labels[g] << "</text>\n";
        for (std::size_t s = 0; s < series.size(); ++s) {
            const double v = series[s].values.at(g);
            const double x = kLeft + group_w * static_cast<double>(g) + group_w * 0.1 +
                             bar_w * static_cast<double>(s);
            const double y = f.py(v);
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w * 0.92
                << "\" height=\"" << (kHeight - kBottom) - y << "\" fill=\"" << series[s].color
                << "\"/>\n";
        }
    }
    double legend_y = kTop + 14.0;
    for (const SvgBarSeries& s : series) {
        out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << s.color << "\">" << s.label << "</text>\n";
        legend_y += 16.0;
    }
    out << "</svg>\n";
}

}  // namespace belldisc
