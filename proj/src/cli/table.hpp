#pragma once
#include <string>
#include <vector>

namespace dwell::cli {

// 12 significant digits, shortest of fixed/scientific; locale-free and
// byte-stable across runs
std::string format_sig(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  int column_index(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

// writes the whole file to <path>.tmp and renames it into place
void write_text_atomic(const std::string& path, const std::string& content);

std::string to_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);

}  // namespace dwell::cli
