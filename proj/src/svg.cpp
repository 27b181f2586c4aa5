#include "impactlab/svg.hpp"

#include "impactlab/csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace impactlab {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 55.0;

double axis_value(double v, bool log, const std::string& label, std::size_t row, bool is_x) {
    if (!log) return v;
    if (!(v > 0.0))
        throw std::domain_error("nonpositive value on log " + std::string(is_x ? "x" : "y") +
                                " axis in series '" + label + "' row " + std::to_string(row));
    return std::log10(v);
}

std::string fmt_tick(double decade) {
    return "1e" + std::to_string(static_cast<int>(std::lround(decade)));
}

} // namespace

std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec) {
    if (series.empty()) throw std::invalid_argument("plot needs at least one series");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw std::invalid_argument("series x/y length mismatch");
        if (s.x.size() < 2)
            throw std::invalid_argument("series '" + s.label + "' needs at least 2 points");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = axis_value(s.x[i], spec.logx, s.label, i, true);
            const double yv = axis_value(s.y[i], spec.logy, s.label, i, false);
            xmin = std::min(xmin, xv);
            xmax = std::max(xmax, xv);
            ymin = std::min(ymin, yv);
            ymax = std::max(ymax, yv);
        }
    }
    if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
    if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    auto px = [&](double v) { return kMarginL + (v - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double v) { return kMarginT + (ymax - v) / (ymax - ymin) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(kWidth) +
           "\" height=\"" + format_double(kHeight) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + format_double(kWidth) + "\" height=\"" +
           format_double(kHeight) + "\" fill=\"white\"/>\n";
    out += "<rect x=\"" + format_double(kMarginL) + "\" y=\"" + format_double(kMarginT) +
           "\" width=\"" + format_double(plot_w) + "\" height=\"" + format_double(plot_h) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (!spec.title.empty())
        out += "<text x=\"" + format_double(kWidth / 2) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
               spec.title + "</text>\n";

    auto tick = [&](double v, bool on_x) {
        if (on_x) {
            const double X = px(v);
            out += "<line x1=\"" + format_double(X) + "\" y1=\"" + format_double(kMarginT + plot_h) +
                   "\" x2=\"" + format_double(X) + "\" y2=\"" +
                   format_double(kMarginT + plot_h + 5) + "\" stroke=\"#444\"/>\n";
            out += "<text x=\"" + format_double(X) + "\" y=\"" +
                   format_double(kMarginT + plot_h + 20) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
                   (spec.logx ? fmt_tick(v) : format_double(v)) + "</text>\n";
        } else {
            const double Y = py(v);
            out += "<line x1=\"" + format_double(kMarginL - 5) + "\" y1=\"" + format_double(Y) +
                   "\" x2=\"" + format_double(kMarginL) + "\" y2=\"" + format_double(Y) +
                   "\" stroke=\"#444\"/>\n";
            out += "<text x=\"" + format_double(kMarginL - 8) + "\" y=\"" + format_double(Y + 4) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                   (spec.logy ? fmt_tick(v) : format_double(v)) + "</text>\n";
        }
    };
    const int nticks = 5;
    if (spec.logx) {
        for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax));
             ++d)
            tick(d, true);
    } else {
        for (int i = 0; i <= nticks; ++i) tick(xmin + (xmax - xmin) * i / nticks, true);
    }
    if (spec.logy) {
        for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax));
             ++d)
            tick(d, false);
    } else {
        for (int i = 0; i <= nticks; ++i) tick(ymin + (ymax - ymin) * i / nticks, false);
    }
    out += "<text x=\"" + format_double(kMarginL + plot_w / 2) + "\" y=\"" +
           format_double(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + spec.xlabel +
           "</text>\n";
    out += "<text x=\"18\" y=\"" + format_double(kMarginT + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
           format_double(kMarginT + plot_h / 2) + ")\">" + spec.ylabel + "</text>\n";

    double legend_y = kMarginT + 16;
    for (const auto& s : series) {
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double X = px(axis_value(s.x[i], spec.logx, s.label, i, true));
            const double Y = py(axis_value(s.y[i], spec.logy, s.label, i, false));
            points += format_double(X) + "," + format_double(Y) + " ";
        }
        points.pop_back();
        out += "<polyline fill=\"none\" stroke=\"" + s.stroke + "\" stroke-width=\"1.6\" points=\"" +
               points + "\"/>\n";
        if (!s.label.empty()) {
            out += "<line x1=\"" + format_double(kMarginL + plot_w - 150) + "\" y1=\"" +
                   format_double(legend_y - 4) + "\" x2=\"" +
                   format_double(kMarginL + plot_w - 126) + "\" y2=\"" +
                   format_double(legend_y - 4) + "\" stroke=\"" + s.stroke +
                   "\" stroke-width=\"1.6\"/>\n";
            out += "<text x=\"" + format_double(kMarginL + plot_w - 120) + "\" y=\"" +
                   format_double(legend_y) +
                   "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label + "</text>\n";
            legend_y += 16;
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace impactlab
