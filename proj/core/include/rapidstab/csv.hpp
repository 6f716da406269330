#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rapidstab {

/// '.' decimal separator, 17 significant digits.
std::string csv_number(double value);

/// Header row plus data rows, written with LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void add_numeric_row(const std::vector<double>& values);
  void write(std::ostream& out) const;
  std::string str() const;
};

}  // namespace rapidstab
