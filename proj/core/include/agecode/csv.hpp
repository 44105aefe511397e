#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace agecode {

/// Fixed CSV number format: 6 significant digits, "nan"/"inf" spelled out.
/// Every CSV the project emits goes through this so outputs are byte-stable.
std::string csv_number(double value);

/// One CSV line from already-formatted cells, '\n'-terminated.
std::string csv_line(const std::vector<std::string>& cells);

/// Buffered CSV file writer; IoError on open or write failure.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void row(const std::vector<std::string>& cells);
  void close();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream file_;
};

}  // namespace agecode
