#include "rapidstab/csv.hpp"

#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace rapidstab {

std::string csv_number(double value) { return fmt::format("{:.17g}", value); }

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw std::invalid_argument("CsvTable: row width does not match header");
  }
  rows.push_back(std::move(row));
}

void CsvTable::add_numeric_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (const double v : values) row.push_back(csv_number(v));
  add_row(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != 0) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

}  // namespace rapidstab
