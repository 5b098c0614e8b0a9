#ifndef VQNOISE_SVG_HPP
#define VQNOISE_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace vqnoise {

// Minimal static line charts; just enough to plot errors against bounds.
struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool markers = false;
    std::vector<std::pair<double, double>> points;
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<SvgSeries> series;
};

std::string render_svg(const SvgChart& chart);
void write_svg(const SvgChart& chart, const std::string& path);

} // namespace vqnoise

#endif
