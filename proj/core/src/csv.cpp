#include "agecode/csv.hpp"

#include <cmath>
#include <cstdio>

#include "agecode/errors.hpp"

namespace agecode {

std::string csv_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), file_(path) {
  if (!file_) throw IoError("cannot open '" + path + "' for writing");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  file_ << csv_line(cells);
  if (!file_) throw IoError("write to '" + path_ + "' failed");
}

void CsvWriter::close() {
  file_.close();
  if (file_.fail()) throw IoError("closing '" + path_ + "' failed");
}

}  // namespace agecode
