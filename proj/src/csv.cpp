#include "pidf/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pidf {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

RawTable parse_csv(std::istream& in) {
  RawTable table;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split(line);
    for (auto& c : cells) c = trim(c);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  if (in.bad()) throw DataError("error while reading CSV input");
  if (!have_header) throw DataError("empty table: missing header");
  return table;
}

RawTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  return parse_csv(in);
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_csv(const Dataset& data, std::ostream& out) {
  std::vector<const Column*> cols;
  for (const auto& c : data.features()) cols.push_back(&c);
  cols.push_back(&data.target());
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k]->name;
  out << '\n';
  for (std::size_t r = 0; r < data.n_samples(); ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << format_number(cols[k]->values[r]);
    out << '\n';
  }
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + path + "'");
  write_csv(data, out);
  if (!out) throw ConfigError("failed while writing '" + path + "'");
}

}  // namespace pidf
