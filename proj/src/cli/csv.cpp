#include "photometrix/cli/csv.hpp"

#include "photometrix/cli/config.hpp"

#include <cmath>
#include <cstdio>

namespace photometrix::cli {

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> header)
    : path_(path), out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw ConfigError("cannot write '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw Error("csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << format_cell(cells[i]);
  out_ << '\n';
  ++rows_;
}

}  // namespace photometrix::cli
