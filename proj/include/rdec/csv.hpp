#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace rdec {

/// 17 significant digits; round-trips doubles exactly.
std::string format_g17(double value);

/// Minimal CSV sink with a fixed column order fixed by the header.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  size_t columns_ = 0;
};

}  // namespace rdec
