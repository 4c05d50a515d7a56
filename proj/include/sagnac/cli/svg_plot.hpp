#ifndef SAGNAC_CLI_SVG_PLOT_HPP
#define SAGNAC_CLI_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace sagnac::cli
{

enum class LineStyle
{
    Solid,
    Dashed,
    Dotted,
    None,  // markers only
};

struct PlotSeries
{
    std::string label;
    std::vector<double> x{};
    std::vector<double> y{};
    std::string colour = "#000000";
    LineStyle style = LineStyle::Solid;
    bool markers = false;
};

// Minimal static line chart: linear axes, ticks, legend.
class SvgPlot
{
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add(PlotSeries series);
    std::string render(int width = 720, int height = 480) const;

private:
    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<PlotSeries> series_;
};

} // namespace sagnac::cli

#endif
