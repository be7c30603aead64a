#pragma once

#include <istream>
#include <string>
#include <vector>

#include "srhsd/errors.hpp"
#include "srhsd/panel.hpp"

namespace srhsd::cli {

/// Malformed input file; the message names the row and column.
class ParseError : public DomainError {
 public:
  explicit ParseError(const std::string& what) : DomainError(what) {}
};

std::vector<std::string> split_csv_line(const std::string& line);

/// Header of asset names, optional leading `date` column (ignored), one row
/// of plain decimal returns per period. `percent` divides every cell by 100.
ReturnsPanel read_returns_csv(std::istream& in, double periods_per_year, bool percent);
ReturnsPanel read_returns_csv_file(const std::string& path, double periods_per_year,
                                   bool percent);

struct SummaryTable {
  std::vector<std::string> names;
  std::vector<double> annual_return_pct;
  std::vector<double> annual_sd_pct;
};

/// Rows of name,annual_return_pct,annual_sd_pct with an optional header.
SummaryTable read_summary_csv(std::istream& in);
SummaryTable read_summary_csv_file(const std::string& path);

}  // namespace srhsd::cli
