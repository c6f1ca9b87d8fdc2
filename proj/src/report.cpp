#include "qcovpca/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qcovpca/errors.hpp"

namespace qcovpca {

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << "quantity,index,value\n";
    out.precision(17);
    for (const auto& row : rows) {
        out << row.quantity << ',' << row.index << ',' << row.value << '\n';
    }
    if (!out) throw DataError("failed writing " + path);
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    return palette[i % 6];
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (const auto& s : series) {
        for (double v : s.x) {
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        for (double v : s.y) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (!(x_min <= x_max) || !(y_min <= y_max)) {
        x_min = y_min = 0.0;
        x_max = y_max = 1.0;
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto to_px = [&](double x, double y) {
        const double px = kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
        const double py = kMarginTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
        return std::pair<double, double>{px, py};
    };

    std::ostringstream svg;
    svg.precision(10);
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-size='15'>"
        << title << "</text>\n";
    // axes
    svg << "<line x1='" << kMarginLeft << "' y1='" << kMarginTop << "' x2='" << kMarginLeft
        << "' y2='" << kHeight - kMarginBottom << "' stroke='black'/>\n";
    svg << "<line x1='" << kMarginLeft << "' y1='" << kHeight - kMarginBottom << "' x2='"
        << kWidth - kMarginRight << "' y2='" << kHeight - kMarginBottom
        << "' stroke='black'/>\n";
    svg << "<text x='" << kWidth / 2 << "' y='" << kHeight - 12
        << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
    svg << "<text x='16' y='" << kHeight / 2
        << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 " << kHeight / 2
        << ")'>" << y_label << "</text>\n";
    // axis extents
    svg << "<text x='" << kMarginLeft << "' y='" << kHeight - kMarginBottom + 16
        << "' font-size='10'>" << x_min << "</text>\n";
    svg << "<text x='" << kWidth - kMarginRight << "' y='" << kHeight - kMarginBottom + 16
        << "' text-anchor='end' font-size='10'>" << x_max << "</text>\n";
    svg << "<text x='" << kMarginLeft - 4 << "' y='" << kHeight - kMarginBottom
        << "' text-anchor='end' font-size='10'>" << y_min << "</text>\n";
    svg << "<text x='" << kMarginLeft - 4 << "' y='" << kMarginTop + 10
        << "' text-anchor='end' font-size='10'>" << y_max << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.x.size() != s.y.size()) {
            throw LengthMismatch("write_svg_plot: series '" + s.name + "' x/y lengths differ");
        }
        svg << "<polyline fill='none' stroke='" << series_color(si) << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const auto [px, py] = to_px(s.x[i], s.y[i]);
            svg << px << ',' << py << ' ';
        }
        svg << "'/>\n";
        svg << "<text x='" << kWidth - kMarginRight - 6 << "' y='"
            << kMarginTop + 16.0 * (static_cast<double>(si) + 1.0)
            << "' text-anchor='end' font-size='11' fill='" << series_color(si) << "'>"
            << s.name << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << svg.str();
    if (!out) throw DataError("failed writing " + path);
}

}  // namespace qcovpca
