#include "zetacusp/records.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace zetacusp;

TEST_CASE("format_value round-trips doubles at 17 significant digits") {
  CHECK(format_value(0.1) == "0.10000000000000001");
  CHECK(format_value(1.0) == "1");
  CHECK(format_value(-2.5e-14) == "-2.5000000000000001e-14");
  CHECK(format_value(Complex(0.5, -1.0)) == "0.5 -1");
}

TEST_CASE("records emit in insertion order") {
  ResultRecord rec;
  rec.add("b", 2L);
  rec.add("a", "x");
  rec.add("z", Complex(1.0, 0.25));
  CHECK(rec.to_text() == "b = 2\na = x\nz = 1 0.25\n");
}

TEST_CASE("identical records yield identical bytes") {
  ResultRecord a, b;
  for (auto* r : {&a, &b}) {
    r->add("value", 0.30000000000000004);
    r->add("count", 12L);
  }
  CHECK(a.to_text() == b.to_text());
}

TEST_CASE("csv tables enforce the header width") {
  CsvTable table({"x", "y"});
  table.add_row({"1", "2"});
  CHECK_THROWS_AS(table.add_row({"1"}), std::invalid_argument);
  CHECK(table.to_text() == "x,y\n1,2\n");
}
