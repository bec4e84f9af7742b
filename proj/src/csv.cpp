#include "hdsign/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hdsign/errors.hpp"
#include "hdsign/report.hpp"

namespace hdsign {

namespace {

[[noreturn]] void malformed(std::size_t line, std::size_t col, const std::string& what) {
  throw InvalidInput("CSV line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     what);
}

std::vector<std::string> split_fields(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      if (!cur.empty() || was_quoted) malformed(line_no, fields.size() + 1, "stray quote");
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) malformed(line_no, fields.size() + 1, "unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

double parse_cell(const std::string& raw, std::size_t line, std::size_t col) {
  std::size_t b = 0, e = raw.size();
  while (b < e && (raw[b] == ' ' || raw[b] == '\t')) ++b;
  while (e > b && (raw[e - 1] == ' ' || raw[e - 1] == '\t')) --e;
  if (b == e) malformed(line, col, "empty cell");
  const char* first = raw.data() + b;
  const char* last = raw.data() + e;
  if (*first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    malformed(line, col, "not a number: '" + raw.substr(b, e - b) + "'");
  }
  if (!std::isfinite(v)) malformed(line, col, "non-finite value");
  return v;
}

}  // namespace

SampleMatrix read_csv(std::istream& in, bool header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool skipped_header = !header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    const auto fields = split_fields(line, line_no);
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      malformed(line_no, std::min(fields.size(), width) + 1,
                "expected " + std::to_string(width) + " columns, found " + std::to_string(fields.size()));
    }
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) row[c] = parse_cell(fields[c], line_no, c + 1);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput("CSV contains no data rows");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return SampleMatrix(std::move(m));
}

SampleMatrix read_csv_file(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_csv(in, header);
}

void write_csv(std::ostream& out, const Matrix& x) {
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (j) out << ',';
      out << format_double(x(i, j));
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Matrix& x) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  write_csv(out, x);
}

}  // namespace hdsign
