#include "qhj/table.hpp"

#include <cmath>
#include <cstdio>

namespace qhj {

Cell Cell::num(double v) {
  Cell c;
  if (std::isfinite(v)) {
    c.kind = Kind::number;
    c.number = v;
  }  // non-finite values render as undefined
  return c;
}

Cell Cell::str(std::string s) {
  Cell c;
  c.kind = Kind::text;
  c.text = std::move(s);
  return c;
}

Cell Cell::flag_list(std::vector<std::string> tokens) {
  Cell c;
  c.kind = Kind::flags;
  c.tokens = std::move(tokens);
  return c;
}

Cell Cell::boolean(bool b) {
  Cell c;
  c.kind = Kind::boolean;
  c.flag = b;
  return c;
}

Cell Cell::none() { return Cell{}; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::number:
      return format_double(c.number);
    case Cell::Kind::text:
      return c.text;
    case Cell::Kind::flags: {
      std::string out;
      for (const auto& t : c.tokens) {
        if (!out.empty()) out += ';';
        out += t;
      }
      return out;
    }
    case Cell::Kind::boolean:
      return c.flag ? "true" : "false";
    case Cell::Kind::empty:
      return "";
  }
  return "";
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

std::string json_cell(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::number:
      return format_double(c.number);
    case Cell::Kind::text:
      return "\"" + json_escape(c.text) + "\"";
    case Cell::Kind::flags: {
      std::string out = "[";
      for (std::size_t i = 0; i < c.tokens.size(); ++i) {
        if (i) out += ",";
        out += "\"" + json_escape(c.tokens[i]) + "\"";
      }
      return out + "]";
    }
    case Cell::Kind::boolean:
      return c.flag ? "true" : "false";
    case Cell::Kind::empty:
      return "null";
  }
  return "null";
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table, const std::string& command) {
  std::string out = "{\n  \"command\": \"" + json_escape(command) +
                    "\",\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += (r == 0) ? "\n" : ",\n";
    out += "    {";
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      if (i) out += ", ";
      out += "\"" + json_escape(table.columns[i]) + "\": " + json_cell(row[i]);
    }
    out += "}";
  }
  out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace qhj
