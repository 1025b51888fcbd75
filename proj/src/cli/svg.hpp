#pragma once
#include <string>

#include "table.hpp"

namespace dwell::cli {

struct PlotSpec {
  std::string x_col;
  std::string y_col;
  std::string y2_col;    // empty when unused
  bool has_hline = false;
  double hline = 0.0;
};

// deterministic 800x500 line plot; throws domain_error on unknown columns
std::string render_line_plot(const CsvTable& table, const PlotSpec& spec);

}  // namespace dwell::cli
