#include "table.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "dwell/errors.hpp"

namespace dwell::cli {

std::string format_sig(double v) {
  char buf[48];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  if (ec != std::errc{}) throw numerical_error("number formatting failed");
  return std::string(buf, p);
}

int CsvTable::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (lineno == 1) {
      t.columns = cells;
      continue;
    }
    std::vector<double> row(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      const char* b = cells[i].data();
      const char* e = b + cells[i].size();
      auto [p, ec] = std::from_chars(b, e, row[i]);
      if (ec != std::errc{} || p != e)
        throw domain_error(path + ": line " + std::to_string(lineno) + ": bad number '" + cells[i] + "'");
    }
    if (row.size() != t.columns.size())
      throw domain_error(path + ": line " + std::to_string(lineno) + ": expected " +
                         std::to_string(t.columns.size()) + " cells, got " + std::to_string(row.size()));
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw domain_error(path + ": empty file, no header row");
  return t;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw io_error("short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

std::string to_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) s += ',';
    s += columns[i];
  }
  s += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_sig(row[i]);
    }
    s += '\n';
  }
  return s;
}

}  // namespace dwell::cli
