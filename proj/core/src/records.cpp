#include "zetacusp/records.hpp"

#include <cstdio>
#include <stdexcept>

namespace zetacusp {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_value(Complex v) {
  return format_value(v.real()) + " " + format_value(v.imag());
}

void ResultRecord::add(const std::string& key, const std::string& value) {
  fields.emplace_back(key, value);
}

void ResultRecord::add(const std::string& key, const char* value) {
  fields.emplace_back(key, std::string(value));
}

void ResultRecord::add(const std::string& key, double value) {
  fields.emplace_back(key, format_value(value));
}

void ResultRecord::add(const std::string& key, Complex value) {
  fields.emplace_back(key, format_value(value));
}

void ResultRecord::add(const std::string& key, long value) {
  fields.emplace_back(key, std::to_string(value));
}

std::string ResultRecord::to_text() const {
  std::string out;
  for (const auto& [key, value] : fields) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

CsvTable::CsvTable(std::vector<std::string> columns)
    : header(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw std::invalid_argument("CsvTable: row width does not match header");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_text() const {
  std::string out;
  auto join = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  join(header);
  for (const auto& row : rows) join(row);
  return out;
}

}  // namespace zetacusp
