#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ediffract {

using Cell = std::variant<double, long long, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;

  void add_row(std::vector<Cell> row);
};

// header row, comma separated, reals with 12 significant digits
void write_csv(std::ostream& os, const ResultTable& t);
std::string format_cell(const Cell& c);

}  // namespace ediffract
