#include "rdec/csv.hpp"

#include <cstdio>

#include "rdec/errors.hpp"

namespace rdec {

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw ConfigError("CsvWriter: cannot open " + path);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  raw_row(columns);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (const double v : values) cells.push_back(format_g17(v));
  raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (columns_ != 0 && cells.size() != columns_)
    throw ConfigError("CsvWriter: row width does not match header");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace rdec
