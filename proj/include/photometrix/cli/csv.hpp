#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace photometrix::cli {

using Cell = std::variant<double, long long, std::string>;

/// Comma-separated output with a header row, LF line endings and 17
/// significant digits for every double.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> header);

  void row(const std::vector<Cell>& cells);
  std::size_t rows() const { return rows_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

std::string format_cell(const Cell& c);

}  // namespace photometrix::cli
