#include "vqnoise/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace vqnoise {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0, kRight = 24.0, kTop = 48.0, kBottom = 56.0;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct AxisScale {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double to_unit(double v) const {
        if (log) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        return (v - lo) / (hi - lo);
    }
    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            const int e0 = static_cast<int>(std::floor(std::log10(lo)));
            const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
            for (int e = e0; e <= e1; ++e) {
                const double v = std::pow(10.0, e);
                if (v >= lo * 0.999 && v <= hi * 1.001) t.push_back(v);
            }
        } else {
            for (int i = 0; i <= 4; ++i) t.push_back(lo + (hi - lo) * i / 4.0);
        }
        return t;
    }
};

AxisScale fit_axis(bool log, double lo, double hi) {
    AxisScale a;
    a.log = log;
    if (log) {
        if (lo <= 0.0) throw std::invalid_argument("svg: log axis needs positive data");
        a.lo = std::pow(10.0, std::floor(std::log10(lo)));
        a.hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (a.lo == a.hi) a.hi *= 10.0;
    } else {
        const double pad = (hi - lo) * 0.08 + 1e-300;
        a.lo = lo - pad;
        a.hi = hi + pad;
        if (a.lo == a.hi) {
            a.lo -= 1.0;
            a.hi += 1.0;
        }
    }
    return a;
}

} // namespace

std::string render_svg(const SvgChart& chart) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : chart.series)
        for (const auto& [x, y] : s.points) {
            if (chart.log_x && x <= 0.0) continue;
            if (chart.log_y && y <= 0.0) continue;
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    if (!(xlo <= xhi) || !(ylo <= yhi))
        throw std::invalid_argument("svg: no plottable points");

    const AxisScale ax = fit_axis(chart.log_x, xlo, xhi);
    const AxisScale ay = fit_axis(chart.log_y, ylo, yhi);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + ax.to_unit(v) * pw; };
    auto py = [&](double v) { return kTop + (1.0 - ay.to_unit(v)) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + chart.title + "</text>\n";

    for (double t : ax.ticks()) {
        const double x = px(t);
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(kTop + ph) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(t) +
               "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = py(t);
        out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft + pw) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(t) +
               "</text>\n";
    }
    out += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    out += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           chart.x_label + "</text>\n";
    out += "<text x=\"18\" y=\"" + fmt(kTop + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + fmt(kTop + ph / 2) + ")\">" + chart.y_label +
           "</text>\n";

    double legend_y = kTop + 10.0;
    for (const auto& s : chart.series) {
        std::string path;
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (chart.log_x && x <= 0.0) continue;
            if (chart.log_y && y <= 0.0) continue;
            path += (first ? "M" : "L") + fmt(px(x)) + " " + fmt(py(y)) + " ";
            first = false;
        }
        out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.8\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        if (s.markers)
            for (const auto& [x, y] : s.points) {
                if (chart.log_x && x <= 0.0) continue;
                if (chart.log_y && y <= 0.0) continue;
                out += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) +
                       "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
            }
        out += "<line x1=\"" + fmt(kLeft + pw - 150) + "\" y1=\"" + fmt(legend_y) + "\" x2=\"" +
               fmt(kLeft + pw - 126) + "\" y2=\"" + fmt(legend_y) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"1.8\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        out += "<text x=\"" + fmt(kLeft + pw - 120) + "\" y=\"" + fmt(legend_y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
        legend_y += 16.0;
    }
    out += "</svg>\n";
    return out;
}

void write_svg(const SvgChart& chart, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("svg: cannot open " + path);
    f << render_svg(chart);
}

} // namespace vqnoise
