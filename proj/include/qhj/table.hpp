#pragma once

#include <string>
#include <vector>

namespace qhj {

/// Deterministic tabular output shared by every CLI command. Numbers are
/// rendered at 17 significant digits ('.' decimal separator, '\n' line
/// endings); undefined values become an empty CSV field / JSON null; flag
/// sets become ';'-joined token lists / JSON string arrays.
struct Cell {
  enum class Kind { number, text, flags, boolean, empty };
  Kind kind = Kind::empty;
  double number = 0.0;
  std::string text;
  std::vector<std::string> tokens;
  bool flag = false;

  static Cell num(double v);
  static Cell str(std::string s);
  static Cell flag_list(std::vector<std::string> tokens);
  static Cell boolean(bool b);
  static Cell none();
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17-significant-digit rendering of a finite double (%.17g, C locale).
std::string format_double(double v);

std::string to_csv(const Table& table);
std::string to_json(const Table& table, const std::string& command);

}  // namespace qhj
