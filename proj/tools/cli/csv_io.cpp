#include "csv_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace srhsd::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& line) { return trim(line).empty(); }

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  return in;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

ReturnsPanel read_returns_csv(std::istream& in, double periods_per_year, bool percent) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) break;
  }
  if (blank(line)) throw ParseError("returns file is empty");
  std::vector<std::string> header = split_csv_line(line);
  const bool has_date = !header.empty() && lower(header.front()) == "date";
  const std::size_t offset = has_date ? 1 : 0;
  if (header.size() <= offset) throw ParseError("returns file has no asset columns");
  std::vector<std::string> names(header.begin() + static_cast<std::ptrdiff_t>(offset),
                                 header.end());
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j].empty()) {
      throw ParseError("header column " + std::to_string(j + 1 + offset) + " has no asset name");
    }
  }

  std::vector<double> cells;
  long rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto parts = split_csv_line(line);
    if (parts.size() != header.size()) {
      std::ostringstream os;
      os << "row " << line_no << " has " << parts.size() << " cells, expected "
         << header.size();
      throw ParseError(os.str());
    }
    for (std::size_t j = offset; j < parts.size(); ++j) {
      double v;
      if (!parse_double(parts[j], v)) {
        std::ostringstream os;
        os << "row " << line_no << ", asset '" << header[j] << "': non-numeric cell '"
           << parts[j] << "'";
        throw ParseError(os.str());
      }
      cells.push_back(percent ? v / 100.0 : v);
    }
    ++rows;
  }
  const auto p = static_cast<Eigen::Index>(names.size());
  if (rows < 2) throw ParseError("returns file needs at least 2 data rows");
  Eigen::MatrixXd values(rows, p);
  for (long i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) values(i, j) = cells[static_cast<std::size_t>(i * p + j)];
  }
  return ReturnsPanel(std::move(values), std::move(names), periods_per_year);
}

ReturnsPanel read_returns_csv_file(const std::string& path, double periods_per_year,
                                   bool percent) {
  auto in = open_or_throw(path);
  return read_returns_csv(in, periods_per_year, percent);
}

SummaryTable read_summary_csv(std::istream& in) {
  SummaryTable table;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto parts = split_csv_line(line);
    if (parts.size() != 3) {
      std::ostringstream os;
      os << "row " << line_no << " has " << parts.size()
         << " cells, expected 3 (name,annual_return_pct,annual_sd_pct)";
      throw ParseError(os.str());
    }
    double ret, sd;
    const bool numeric = parse_double(parts[1], ret) && parse_double(parts[2], sd);
    if (first && !numeric) {
      first = false;  // header row
      continue;
    }
    first = false;
    if (!numeric) {
      throw ParseError("row " + std::to_string(line_no) + ", fund '" + parts[0] +
                       "': non-numeric return or volatility");
    }
    table.names.push_back(parts[0]);
    table.annual_return_pct.push_back(ret);
    table.annual_sd_pct.push_back(sd);
  }
  if (table.names.empty()) throw ParseError("summary file has no fund rows");
  return table;
}

SummaryTable read_summary_csv_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_summary_csv(in);
}

}  // namespace srhsd::cli
