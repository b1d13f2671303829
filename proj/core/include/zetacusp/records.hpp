#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zetacusp/specfun.hpp"

namespace zetacusp {

// %.17g, the round-trip precision used by every emitter in this project.
std::string format_value(double v);
// "re im" pair in the same format.
std::string format_value(Complex v);

// Ordered key/value record; emission order is insertion order so output is
// byte-stable under a fixed input.
struct ResultRecord {
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value);
  void add(const std::string& key, double value);
  void add(const std::string& key, Complex value);
  void add(const std::string& key, long value);
  // "key = value" lines, '\n' terminated.
  std::string to_text() const;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  explicit CsvTable(std::vector<std::string> columns);
  // Throws std::invalid_argument when the width does not match the header.
  void add_row(std::vector<std::string> row);
  std::string to_text() const;
};

}  // namespace zetacusp
