#include "cosparse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cosparse {

namespace {

constexpr int kWidth = 800, kHeight = 600;
constexpr int kLeft = 70, kRight = 25, kTop = 45, kBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

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

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel,
                              const std::vector<PlotSeries>& series,
                              const std::vector<std::string>& annotations) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kHeight - kBottom - (y - ymin) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";

    // axes
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
       << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kHeight - kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        double xv = xmin + i * (xmax - xmin) / 4;
        double yv = ymin + i * (ymax - ymin) / 4;
        double xp = px(xv), yp = py(yv);
        os << "<line x1=\"" << num(xp) << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
           << num(xp) << "\" y2=\"" << kHeight - kBottom + 5
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << num(xp) << "\" y=\"" << kHeight - kBottom + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << num(xv) << "</text>\n";
        os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(yp) << "\" x2=\"" << kLeft
           << "\" y2=\"" << num(yp) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(yp + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << escape(xlabel) << "</text>\n";
    os << "<text x=\"18\" y=\"" << kTop + ph / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       << "transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">" << escape(ylabel)
       << "</text>\n";

    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.points.empty()) continue;
        const char* color = kPalette[si % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.points.size(); ++i) {
            if (i) os << ' ';
            os << num(px(s.points[i].first)) << ',' << num(py(s.points[i].second));
        }
        os << "\"/>\n";
    }

    // legend
    double ly = kTop + 12;
    double lx = kWidth - kRight - 190;
    for (size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % 6];
        os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
           << num(lx + 24) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
           << "\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[si].label)
           << "</text>\n";
        ly += 16;
    }
    for (const auto& note : annotations) {
        os << "<text x=\"" << num(lx) << "\" y=\"" << num(ly)
           << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">"
           << escape(note) << "</text>\n";
        ly += 14;
    }

    os << "</svg>\n";
    return os.str();
}

}  // namespace cosparse
