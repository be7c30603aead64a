#include "report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "srhsd/errors.hpp"

namespace srhsd::cli {

const char* const kToolVersion = "0.3.0";

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(kPrintDigits) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::vector<std::pair<int, int>> ReportDocument::rejected_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    for (std::size_t j = i + 1; j < decisions[i].size(); ++j) {
      if (decisions[i][j]) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

ReportDocument make_document(const PosthocReport& rep, std::string input_kind,
                             std::string input_file, long n) {
  ReportDocument doc;
  doc.tool_version = kToolVersion;
  doc.input_kind = std::move(input_kind);
  doc.input_file = std::move(input_file);
  doc.n = n;
  doc.p = static_cast<int>(rep.sr.k());
  doc.asset_names = rep.sr.asset_names;
  doc.periods_per_year = rep.sr.periods_per_year;
  doc.alpha = rep.alpha;
  doc.df_mode = to_string(rep.df_mode);
  doc.rho_source = to_string(rep.rho_source);
  doc.sr.assign(rep.sr.sr.data(), rep.sr.sr.data() + rep.sr.sr.size());
  doc.rho_used = rep.rho_used;
  doc.rho_median = rep.rho_median;
  doc.observed_range = rep.observed_range;
  doc.hsd_inf = rep.hsd_inf;
  doc.hsd_ndf = rep.hsd_ndf;
  doc.bc = rep.bc;
  doc.selected_cutoff = rep.selected_cutoff;
  doc.range_pvalue = rep.range_pvalue;
  doc.decisions.assign(static_cast<std::size_t>(doc.p), std::vector<bool>(doc.p, false));
  for (int i = 0; i < doc.p; ++i) {
    for (int j = 0; j < doc.p; ++j) doc.decisions[i][j] = rep.decisions(i, j);
  }
  doc.global_stat = rep.global.stat;
  doc.global_df = rep.global.df;
  doc.global_pvalue = rep.global.pvalue;
  doc.global_form = to_string(rep.global_form);
  doc.global_model = rep.global_model;
  for (Eigen::Index i = 0; i < rep.sample_corr.rows(); ++i) {
    std::vector<double> row(rep.sample_corr.cols());
    for (Eigen::Index j = 0; j < rep.sample_corr.cols(); ++j) row[j] = rep.sample_corr(i, j);
    doc.sample_correlation.push_back(std::move(row));
  }
  doc.warnings = rep.warnings;
  return doc;
}

nlohmann::ordered_json to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["schema_version"] = doc.schema_version;
  j["tool_version"] = doc.tool_version;
  nlohmann::ordered_json input;
  input["kind"] = doc.input_kind;
  input["file"] = doc.input_file;
  input["n"] = doc.n;
  input["p"] = doc.p;
  input["asset_names"] = doc.asset_names;
  input["periods_per_year"] = doc.periods_per_year;
  input["alpha"] = doc.alpha;
  input["df_mode"] = doc.df_mode;
  input["rho_source"] = doc.rho_source;
  input["seed"] = doc.seed ? nlohmann::ordered_json(*doc.seed) : nlohmann::ordered_json();
  j["input"] = std::move(input);

  nlohmann::ordered_json res;
  res["units"] = "annualized";
  res["sr"] = doc.sr;
  res["rho_used"] = doc.rho_used;
  res["rho_median"] = doc.rho_median ? nlohmann::ordered_json(*doc.rho_median)
                                     : nlohmann::ordered_json();
  res["observed_range"] = doc.observed_range;
  res["hsd_inf"] = doc.hsd_inf;
  res["hsd_ndf"] = doc.hsd_ndf;
  res["bc"] = doc.bc;
  res["selected_cutoff"] = doc.selected_cutoff;
  res["range_pvalue"] = doc.range_pvalue;
  res["decisions"] = doc.decisions;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (auto [a, b] : doc.rejected_pairs()) {
    pairs.push_back({doc.asset_names[a], doc.asset_names[b]});
  }
  res["rejected_pairs"] = std::move(pairs);
  res["global_test"] = {{"stat", doc.global_stat},
                        {"df", doc.global_df},
                        {"pvalue", doc.global_pvalue},
                        {"form", doc.global_form},
                        {"model", doc.global_model}};
  res["sample_correlation"] = doc.sample_correlation;
  res["warnings"] = doc.warnings;
  j["results"] = std::move(res);
  return j;
}

ReportDocument from_json(const nlohmann::json& j) {
  ReportDocument doc;
  try {
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kReportSchemaVersion) {
      throw DomainError("unsupported report schema_version " +
                        std::to_string(doc.schema_version));
    }
    doc.tool_version = j.at("tool_version").get<std::string>();
    const auto& in = j.at("input");
    doc.input_kind = in.at("kind").get<std::string>();
    doc.input_file = in.at("file").get<std::string>();
    doc.n = in.at("n").get<long>();
    doc.p = in.at("p").get<int>();
    doc.asset_names = in.at("asset_names").get<std::vector<std::string>>();
    doc.periods_per_year = in.at("periods_per_year").get<double>();
    doc.alpha = in.at("alpha").get<double>();
    doc.df_mode = in.at("df_mode").get<std::string>();
    doc.rho_source = in.at("rho_source").get<std::string>();
    if (!in.at("seed").is_null()) doc.seed = in.at("seed").get<std::uint64_t>();
    const auto& res = j.at("results");
    doc.sr = res.at("sr").get<std::vector<double>>();
    doc.rho_used = res.at("rho_used").get<double>();
    if (!res.at("rho_median").is_null()) doc.rho_median = res.at("rho_median").get<double>();
    doc.observed_range = res.at("observed_range").get<double>();
    doc.hsd_inf = res.at("hsd_inf").get<double>();
    doc.hsd_ndf = res.at("hsd_ndf").get<double>();
    doc.bc = res.at("bc").get<double>();
    doc.selected_cutoff = res.at("selected_cutoff").get<double>();
    doc.range_pvalue = res.at("range_pvalue").get<double>();
    doc.decisions = res.at("decisions").get<std::vector<std::vector<bool>>>();
    const auto& g = res.at("global_test");
    doc.global_stat = g.at("stat").get<double>();
    doc.global_df = g.at("df").get<int>();
    doc.global_pvalue = g.at("pvalue").get<double>();
    doc.global_form = g.at("form").get<std::string>();
    doc.global_model = g.at("model").get<std::string>();
    doc.sample_correlation = res.at("sample_correlation").get<std::vector<std::vector<double>>>();
    doc.warnings = res.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed report JSON: ") + e.what());
  }
  return doc;
}

void write_json(std::ostream& os, const ReportDocument& doc) {
  os << to_json(doc).dump(2) << '\n';
}

void write_text(std::ostream& os, const ReportDocument& doc) {
  std::size_t width = 6;
  for (const auto& name : doc.asset_names) width = std::max(width, name.size());
  os << "Sharpe ratio range test (" << doc.input_kind << ": " << doc.input_file << ")\n";
  os << "n = " << doc.n << ", k = " << doc.p << ", periods/year = " << num(doc.periods_per_year)
     << ", alpha = " << num(doc.alpha) << ", df = " << doc.df_mode << "\n\n";
  os << "Global equality test (" << doc.global_model << " correlation, " << doc.global_form
     << " covariance)\n";
  os << "  chi2 stat = " << num(doc.global_stat) << ", df = " << doc.global_df
     << ", p-value = " << num(doc.global_pvalue) << "\n\n";
  os << "Annualized Sharpe ratios (yr^-1/2)\n";
  for (std::size_t i = 0; i < doc.sr.size(); ++i) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << doc.asset_names[i]
       << "  " << num(doc.sr[i]) << '\n';
  }
  os << std::right << '\n';
  os << "rho (" << doc.rho_source << ") = " << num(doc.rho_used);
  if (doc.rho_median) os << ", median sample correlation = " << num(*doc.rho_median);
  os << '\n';
  os << "observed range = " << num(doc.observed_range) << '\n';
  os << "HSD (df=inf) = " << num(doc.hsd_inf) << '\n';
  os << "HSD (df=n-1) = " << num(doc.hsd_ndf) << '\n';
  os << "Bonferroni cutoff = " << num(doc.bc) << '\n';
  os << "selected cutoff = " << num(doc.selected_cutoff) << '\n';
  os << "range p-value = " << num(doc.range_pvalue) << '\n';
  const auto pairs = doc.rejected_pairs();
  os << "\nRejected pairs: " << pairs.size() << '\n';
  for (auto [a, b] : pairs) {
    os << "  " << doc.asset_names[a] << " vs " << doc.asset_names[b] << "  |diff| = "
       << num(std::abs(doc.sr[a] - doc.sr[b])) << '\n';
  }
  for (const auto& w : doc.warnings) os << "warning: " << w << '\n';
}

void write_csv(std::ostream& os, const ReportDocument& doc) {
  os << "field,value\n";
  os << "schema_version," << doc.schema_version << '\n';
  os << "n," << doc.n << '\n';
  os << "p," << doc.p << '\n';
  os << "periods_per_year," << num(doc.periods_per_year) << '\n';
  os << "alpha," << num(doc.alpha) << '\n';
  os << "df_mode," << doc.df_mode << '\n';
  os << "rho_source," << doc.rho_source << '\n';
  os << "rho_used," << num(doc.rho_used) << '\n';
  if (doc.rho_median) os << "rho_median," << num(*doc.rho_median) << '\n';
  os << "observed_range," << num(doc.observed_range) << '\n';
  os << "hsd_inf," << num(doc.hsd_inf) << '\n';
  os << "hsd_ndf," << num(doc.hsd_ndf) << '\n';
  os << "bc," << num(doc.bc) << '\n';
  os << "selected_cutoff," << num(doc.selected_cutoff) << '\n';
  os << "range_pvalue," << num(doc.range_pvalue) << '\n';
  os << "global_stat," << num(doc.global_stat) << '\n';
  os << "global_df," << doc.global_df << '\n';
  os << "global_pvalue," << num(doc.global_pvalue) << '\n';
  for (std::size_t i = 0; i < doc.sr.size(); ++i) {
    os << csv_field("sr." + doc.asset_names[i]) << ',' << num(doc.sr[i]) << '\n';
  }
  for (auto [a, b] : doc.rejected_pairs()) {
    os << csv_field("rejected." + doc.asset_names[a] + "." + doc.asset_names[b]) << ",1\n";
  }
}

}  // namespace srhsd::cli
