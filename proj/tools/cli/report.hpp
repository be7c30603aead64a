#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srhsd/posthoc.hpp"

namespace srhsd::cli {

inline constexpr int kReportSchemaVersion = 1;
extern const char* const kToolVersion;

/// Serializable form of a PosthocReport plus input metadata. All ratios and
/// cutoffs are annualized (yr^-1/2).
struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  std::string tool_version;
  std::string input_kind;  // "returns" or "summary"
  std::string input_file;
  long n = 0;
  int p = 0;
  std::vector<std::string> asset_names;
  double periods_per_year = 1.0;
  double alpha = 0.05;
  std::string df_mode;
  std::string rho_source;
  std::optional<std::uint64_t> seed;

  std::vector<double> sr;
  double rho_used = 0.0;
  std::optional<double> rho_median;
  double observed_range = 0.0;
  double hsd_inf = 0.0;
  double hsd_ndf = 0.0;
  double bc = 0.0;
  double selected_cutoff = 0.0;
  double range_pvalue = 1.0;
  std::vector<std::vector<bool>> decisions;
  double global_stat = 0.0;
  int global_df = 0;
  double global_pvalue = 1.0;
  std::string global_form;
  std::string global_model;
  std::vector<std::vector<double>> sample_correlation;
  std::vector<std::string> warnings;

  bool operator==(const ReportDocument&) const = default;

  /// Pairs (i < j) whose decision is true.
  std::vector<std::pair<int, int>> rejected_pairs() const;
};

ReportDocument make_document(const PosthocReport& rep, std::string input_kind,
                             std::string input_file, long n);

nlohmann::ordered_json to_json(const ReportDocument& doc);
ReportDocument from_json(const nlohmann::json& j);

void write_json(std::ostream& os, const ReportDocument& doc);
void write_text(std::ostream& os, const ReportDocument& doc);
/// Long format: field,value (per-asset fields are sr.<name>).
void write_csv(std::ostream& os, const ReportDocument& doc);

/// Significant digits used by the text and CSV writers.
inline constexpr int kPrintDigits = 10;

}  // namespace srhsd::cli
