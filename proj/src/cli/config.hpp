#pragma once
#include <string>
#include <vector>

#include "dwell/dynamics.hpp"
#include "dwell/model.hpp"

namespace dwell::cli {

struct GridConfig {
  double x_min = -6.0, x_max = 6.0;
  int n_points = 601;
};

struct OutputConfig {
  std::string directory = "out";
  std::string formats = "both";  // csv | json | both
  std::vector<double> wavefunction_times;
};

struct RunConfig {
  PhysicalParams physical;
  WellShape well;
  BasisSpec basis;
  GaussianPacketSpec packet;
  EvolutionSettings evolution;
  std::vector<double> scan_d{0.0,   -0.01, 0.01,  -0.02, 0.02,  -0.033, 0.033,
                             -0.04, 0.04,  -0.05, 0.05,  -0.066, 0.066};
  GridConfig grid;
  OutputConfig output;
};

// set one "section.key" to a value given as text; throws domain_error on
// unknown keys or unparsable values
void set_key(RunConfig& cfg, const std::string& dotted_key, const std::string& value);

// flat INI: [section] headers, key = value lines, # or ; comments
RunConfig load_config(const std::string& path);

void apply_override(RunConfig& cfg, const std::string& key_eq_value);

// field-by-field validation; throws domain_error naming the offending field
void validate(const RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& text);

}  // namespace dwell::cli
