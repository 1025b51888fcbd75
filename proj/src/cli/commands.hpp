#pragma once
#include <string>

#include "config.hpp"

namespace dwell::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct PlotArgs {
  std::string csv_path;
  std::string x_col;
  std::string y_col;
  std::string y2_col;
  bool has_hline = false;
  double hline = 0.0;
  std::string svg_path;
};

// each command validates its config, writes its files plus manifest.json
// into output.directory, and returns 0; failures are reported by throwing
int cmd_eigen(const RunConfig& cfg);
int cmd_evolve(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg);
int cmd_classical(const RunConfig& cfg);
int cmd_plot(const PlotArgs& args);

}  // namespace dwell::cli
