#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "csv_io.hpp"
#include "report.hpp"
#include "svg_chart.hpp"

using Catch::Approx;
using namespace srhsd;
using namespace srhsd::cli;

namespace {

ReportDocument sample_document() {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(120, 4);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double f = z(gen);
    for (Eigen::Index j = 0; j < 4; ++j) x(i, j) = 0.1 * (j == 2) + 0.8 * f + 0.6 * z(gen);
  }
  const ReturnsPanel panel(x, {"Cnsmr", "Manuf", "Hi & Tech", "Hlth<"}, 12.0);
  const PosthocReport rep = run_posthoc(panel, {});
  return make_document(rep, "returns", "panel.csv", 120);
}

std::map<std::string, std::string> parse_field_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::string> out;
  while (std::getline(in, line)) {
    const auto cells = split_csv_line(line);
    REQUIRE(cells.size() == 2);
    out[cells[0]] = cells[1];
  }
  return out;
}

// Value following `label` on the text report.
double text_value(const std::string& text, const std::string& label) {
  const auto pos = text.find(label);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + label.size()));
}

bool agrees(double printed, double exact) {
  return std::abs(printed - exact) <= 1e-9 * std::max(1.0, std::abs(exact));
}

}  // namespace

TEST_CASE("JSON round trip", "[report]") {
  ReportDocument doc = sample_document();
  CHECK(from_json(to_json(doc)) == doc);
  std::ostringstream os;
  write_json(os, doc);
  CHECK(from_json(nlohmann::json::parse(os.str())) == doc);

  doc.seed = 77;
  doc.rho_median.reset();
  doc.warnings.push_back("something odd");
  std::ostringstream os2;
  write_json(os2, doc);
  CHECK(from_json(nlohmann::json::parse(os2.str())) == doc);
}

TEST_CASE("JSON layout", "[report]") {
  const ReportDocument doc = sample_document();
  const auto j = to_json(doc);
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("tool_version") == std::string(kToolVersion));
  for (const char* key : {"kind", "file", "n", "p", "asset_names", "periods_per_year", "alpha",
                          "df_mode", "rho_source", "seed"}) {
    CHECK(j.at("input").contains(key));
  }
  for (const char* key :
       {"units", "sr", "rho_used", "rho_median", "observed_range", "hsd_inf", "hsd_ndf", "bc",
        "selected_cutoff", "range_pvalue", "decisions", "rejected_pairs", "global_test",
        "sample_correlation", "warnings"}) {
    CHECK(j.at("results").contains(key));
  }
  CHECK(j["results"]["global_test"]["df"] == 3);
  auto bad = nlohmann::json::parse(to_json(doc).dump());
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(from_json(bad), DomainError);
  bad = nlohmann::json::parse(to_json(doc).dump());
  bad["results"].erase("bc");
  CHECK_THROWS_AS(from_json(bad), DomainError);
}

TEST_CASE("text, CSV and JSON agree", "[report]") {
  const ReportDocument doc = sample_document();
  std::ostringstream text_os, csv_os, json_os;
  write_text(text_os, doc);
  write_csv(csv_os, doc);
  write_json(json_os, doc);
  const std::string text = text_os.str();
  const auto csv = parse_field_csv(csv_os.str());
  const auto json = nlohmann::json::parse(json_os.str());
  const auto& res = json["results"];

  const std::vector<std::tuple<std::string, std::string, double>> fields = {
      {"rho_used", "", doc.rho_used},
      {"observed_range", "observed range = ", doc.observed_range},
      {"hsd_inf", "HSD (df=inf) = ", doc.hsd_inf},
      {"hsd_ndf", "HSD (df=n-1) = ", doc.hsd_ndf},
      {"bc", "Bonferroni cutoff = ", doc.bc},
      {"selected_cutoff", "selected cutoff = ", doc.selected_cutoff},
      {"range_pvalue", "range p-value = ", doc.range_pvalue},
  };
  for (const auto& [key, label, exact] : fields) {
    INFO(key);
    CHECK(agrees(std::stod(csv.at(key)), exact));
    CHECK(agrees(res.at(key).get<double>(), exact));
    if (!label.empty()) CHECK(agrees(text_value(text, label), exact));
  }
  CHECK(agrees(std::stod(csv.at("global_stat")), res["global_test"]["stat"].get<double>()));
  CHECK(agrees(text_value(text, "chi2 stat = "), res["global_test"]["stat"].get<double>()));
  CHECK(agrees(std::stod(csv.at("global_pvalue")), res["global_test"]["pvalue"].get<double>()));
  CHECK(agrees(text_value(text, "p-value = "), res["global_test"]["pvalue"].get<double>()));
  CHECK(agrees(text_value(text, "rho (estimated) = "), res["rho_used"].get<double>()));
  for (std::size_t i = 0; i < doc.sr.size(); ++i) {
    const std::string& name = doc.asset_names[i];
    CHECK(agrees(std::stod(csv.at("sr." + name)), res["sr"][i].get<double>()));
    CHECK(agrees(text_value(text, "  " + name), res["sr"][i].get<double>()));
  }
  const auto pairs = doc.rejected_pairs();
  CHECK(res["rejected_pairs"].size() == pairs.size());
  CHECK(text_value(text, "Rejected pairs: ") == pairs.size());
  for (auto [a, b] : pairs) {
    CHECK(csv.count("rejected." + doc.asset_names[a] + "." + doc.asset_names[b]) == 1);
  }
}

TEST_CASE("SVG chart is valid XML with one error bar per asset", "[report][svg]") {
  const ReportDocument doc = sample_document();
  std::ostringstream os;
  write_svg_chart(os, doc);
  std::istringstream in(os.str());
  boost::property_tree::ptree tree;
  REQUIRE_NOTHROW(boost::property_tree::read_xml(in, tree));
  const auto& svg = tree.get_child("svg");
  CHECK(svg.get<std::string>("<xmlattr>.version") == "1.1");

  int errorbars = 0;
  int legends = 0;
  std::string legend_text;
  std::function<void(const boost::property_tree::ptree&)> walk =
      [&](const boost::property_tree::ptree& node) {
        for (const auto& [name, child] : node) {
          if (name == "g") {
            const auto cls = child.get<std::string>("<xmlattr>.class", "");
            if (cls == "errorbar") ++errorbars;
            if (cls == "legend") {
              ++legends;
              for (const auto& [n2, c2] : child) {
                if (n2 == "text") legend_text += c2.data() + "\n";
              }
            }
          }
          walk(child);
        }
      };
  walk(svg);
  CHECK(errorbars == doc.p);
  CHECK(legends == 1);
  CHECK(legend_text.find("alpha") != std::string::npos);
  CHECK(legend_text.find("0.05") != std::string::npos);
  CHECK(legend_text.find("n-1") != std::string::npos);
  CHECK(os.str().find("Hlth&lt;") != std::string::npos);
  CHECK(xml_escape("a<b&\"c'>") == "a&lt;b&amp;&quot;c&apos;&gt;");
}
