#pragma once

#include <iosfwd>
#include <string>

#include "report.hpp"

namespace srhsd::cli {

/// Lollipop chart of annualized Sharpe ratios, one horizontal error bar of
/// +/- the selected HSD per asset (<g class="errorbar">), and a legend naming
/// alpha and the df mode. Static SVG 1.1.
void write_svg_chart(std::ostream& os, const ReportDocument& doc);

std::string xml_escape(const std::string& s);

}  // namespace srhsd::cli
