#include <sagnac/cli/svg_plot.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sagnac::cli
{

namespace
{

struct Range
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v)
    {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    void settle()
    {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
            lo -= pad;
            hi += pad;
        }
    }
};

double nice_step(double span)
{
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    const double nice = frac < 1.5 ? 1.0 : frac < 3.0 ? 2.0 : frac < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-300 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

const char *dash(LineStyle style)
{
    switch (style) {
    case LineStyle::Dashed: return " stroke-dasharray=\"8,5\"";
    case LineStyle::Dotted: return " stroke-dasharray=\"2,4\"";
    default: return "";
    }
}

} // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label))
{
}

void SvgPlot::add(PlotSeries series)
{
    series_.push_back(std::move(series));
}

std::string SvgPlot::render(int width, int height) const
{
    const double left = 90.0;
    const double right = 20.0;
    const double top = 40.0;
    const double bottom = 60.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    Range xr;
    Range yr;
    for (const auto &s : series_) {
        for (double v : s.x)
            xr.include(v);
        for (double v : s.y)
            yr.include(v);
    }
    xr.settle();
    yr.settle();

    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title_)
        << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";

    const double xs = nice_step(xr.hi - xr.lo);
    for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9 * xs; t += xs) {
        svg << "<line x1=\"" << px(t) << "\" y1=\"" << top + ph << "\" x2=\"" << px(t) << "\" y2=\""
            << top + ph + 5 << "\" stroke=\"#333\"/>";
        svg << "<text x=\"" << px(t) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
            << tick_label(t) << "</text>\n";
    }
    const double ys = nice_step(yr.hi - yr.lo);
    for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9 * ys; t += ys) {
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
            << "\" stroke=\"#333\"/>";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">" << tick_label(t)
            << "</text>\n";
    }
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
        << escape(x_label_) << "</text>\n";
    svg << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(y_label_) << "</text>\n";

    for (const auto &s : series_) {
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (s.style != LineStyle::None && n > 1) {
            svg << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.8\"" << dash(s.style)
                << " points=\"";
            for (std::size_t i = 0; i < n; ++i) {
                if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
                    svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            }
            svg << "\"/>\n";
        }
        if (s.markers) {
            for (std::size_t i = 0; i < n; ++i) {
                if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
                    svg << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3.5\" fill=\""
                        << s.colour << "\"/>\n";
            }
        }
    }

    double ly = top + 14;
    for (const auto &s : series_) {
        const double lx = left + pw - 190;
        if (s.style != LineStyle::None)
            svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 28 << "\" y2=\"" << ly
                << "\" stroke=\"" << s.colour << "\" stroke-width=\"1.8\"" << dash(s.style) << "/>";
        if (s.markers)
            svg << "<circle cx=\"" << lx + 14 << "\" cy=\"" << ly << "\" r=\"3.5\" fill=\"" << s.colour << "\"/>";
        svg << "<text x=\"" << lx + 34 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
        ly += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace sagnac::cli
