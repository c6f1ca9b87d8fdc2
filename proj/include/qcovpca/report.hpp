#ifndef QCOVPCA_REPORT_HPP
#define QCOVPCA_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qcovpca {

// One row of the fixed "quantity,index,value" report schema.
struct ReportRow {
    std::string quantity;
    std::int64_t index = 0;
    double value = 0.0;
};

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);

// Minimal line/scatter plot; the CSV tables are the source of truth, the SVG
// is a convenience rendering.
struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

}  // namespace qcovpca

#endif
