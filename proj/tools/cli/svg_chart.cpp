#include "svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace srhsd::cli {
namespace {

constexpr double kRowHeight = 22.0;
constexpr double kLabelWidth = 190.0;
constexpr double kPlotWidth = 460.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_svg_chart(std::ostream& os, const ReportDocument& doc) {
  const std::size_t k = doc.sr.size();
  const double hsd = doc.selected_cutoff;
  double lo = 0.0, hi = 0.0;
  if (k > 0) {
    lo = *std::min_element(doc.sr.begin(), doc.sr.end()) - hsd;
    hi = *std::max_element(doc.sr.begin(), doc.sr.end()) + hsd;
  }
  lo = std::min(lo, 0.0);
  hi = std::max(hi, 0.0);
  if (hi - lo <= 0.0) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto x_of = [&](double v) { return kLabelWidth + (v - lo) / (hi - lo) * kPlotWidth; };

  const double width = kLabelWidth + kPlotWidth + 30.0;
  const double height = kTop + kRowHeight * static_cast<double>(k) + kBottom;
  const double plot_bottom = kTop + kRowHeight * static_cast<double>(k);

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width, 6)
     << "\" height=\"" << fmt(height, 6) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "  <title>Annualized Sharpe ratios with +/- HSD error bars</title>\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(width, 6) << "\" height=\"" << fmt(height, 6)
     << "\" fill=\"white\"/>\n";

  // Zero line and axis.
  os << "  <line class=\"zero\" x1=\"" << fmt(x_of(0.0), 6) << "\" y1=\"" << kTop - 10
     << "\" x2=\"" << fmt(x_of(0.0), 6) << "\" y2=\"" << plot_bottom
     << "\" stroke=\"#999\" stroke-dasharray=\"4,3\"/>\n";
  os << "  <line class=\"axis\" x1=\"" << kLabelWidth << "\" y1=\"" << plot_bottom << "\" x2=\""
     << kLabelWidth + kPlotWidth << "\" y2=\"" << plot_bottom << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    os << "  <text x=\"" << fmt(x_of(v), 6) << "\" y=\"" << plot_bottom + 16
       << "\" text-anchor=\"middle\">" << fmt(v, 3) << "</text>\n";
  }
  os << "  <text x=\"" << kLabelWidth + kPlotWidth / 2 << "\" y=\"" << plot_bottom + 34
     << "\" text-anchor=\"middle\">Sharpe ratio (yr^-1/2)</text>\n";

  for (std::size_t i = 0; i < k; ++i) {
    const double y = kTop + kRowHeight * (static_cast<double>(i) + 0.5);
    const double x = x_of(doc.sr[i]);
    const double x0 = x_of(doc.sr[i] - hsd);
    const double x1 = x_of(doc.sr[i] + hsd);
    os << "  <text x=\"" << kLabelWidth - 8 << "\" y=\"" << fmt(y + 4, 6)
       << "\" text-anchor=\"end\">" << xml_escape(doc.asset_names[i]) << "</text>\n";
    os << "  <g class=\"errorbar\" stroke=\"#1f4e9c\">\n";
    os << "    <line x1=\"" << fmt(x0, 6) << "\" y1=\"" << fmt(y, 6) << "\" x2=\"" << fmt(x1, 6)
       << "\" y2=\"" << fmt(y, 6) << "\"/>\n";
    os << "    <line x1=\"" << fmt(x0, 6) << "\" y1=\"" << fmt(y - 5, 6) << "\" x2=\""
       << fmt(x0, 6) << "\" y2=\"" << fmt(y + 5, 6) << "\"/>\n";
    os << "    <line x1=\"" << fmt(x1, 6) << "\" y1=\"" << fmt(y - 5, 6) << "\" x2=\""
       << fmt(x1, 6) << "\" y2=\"" << fmt(y + 5, 6) << "\"/>\n";
    os << "  </g>\n";
    os << "  <circle class=\"point\" cx=\"" << fmt(x, 6) << "\" cy=\"" << fmt(y, 6)
       << "\" r=\"4\" fill=\"#c0392b\"/>\n";
  }

  os << "  <g class=\"legend\">\n";
  os << "    <text x=\"" << kLabelWidth << "\" y=\"20\">"
     << xml_escape("error bars: +/- HSD = " + fmt(hsd) + ", alpha = " + fmt(doc.alpha) +
                   ", df = " + doc.df_mode)
     << "</text>\n";
  os << "  </g>\n";
  os << "</svg>\n";
}

}  // namespace srhsd::cli
