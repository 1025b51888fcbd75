#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "dwell/errors.hpp"

namespace dwell::cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::string t = trim(v);
  const char* b = t.data();
  const char* e = b + t.size();
  double out;
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc{} || p != e) throw domain_error(key + ": not a number: '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  std::string t = trim(v);
  const char* b = t.data();
  const char* e = b + t.size();
  int out;
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc{} || p != e) throw domain_error(key + ": not an integer: '" + v + "'");
  return out;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&]() {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(parse_double("list entry", t));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',')
      flush();
    else
      cur += ch;
  }
  flush();
  return out;
}

void set_key(RunConfig& cfg, const std::string& dotted_key, const std::string& value) {
  const std::string& k = dotted_key;
  if (k == "physical.m") cfg.physical.m = parse_double(k, value);
  else if (k == "physical.omega") cfg.physical.omega = parse_double(k, value);
  else if (k == "physical.hbar") cfg.physical.hbar = parse_double(k, value);
  else if (k == "well.x_s") cfg.well.x_s = parse_double(k, value);
  else if (k == "well.d") cfg.well.d = parse_double(k, value);
  else if (k == "basis.n_max") cfg.basis.n_max = parse_int(k, value);
  else if (k == "packet.x0") cfg.packet.x0 = parse_double(k, value);
  else if (k == "packet.p0") cfg.packet.p0 = parse_double(k, value);
  else if (k == "packet.mu") cfg.packet.mu = parse_double(k, value);
  else if (k == "packet.alpha") cfg.packet.alpha = parse_double(k, value);
  else if (k == "evolution.t_max") cfg.evolution.t_max = parse_double(k, value);
  else if (k == "evolution.dt_out") cfg.evolution.dt_out = parse_double(k, value);
  else if (k == "evolution.rel_tol") cfg.evolution.rel_tol = parse_double(k, value);
  else if (k == "evolution.abs_tol") cfg.evolution.abs_tol = parse_double(k, value);
  else if (k == "evolution.method") {
    std::string v = trim(value);
    if (v == "A" || v == "a") cfg.evolution.method = Method::A;
    else if (v == "B" || v == "b") cfg.evolution.method = Method::B;
    else throw domain_error("evolution.method: expected A or B, got '" + value + "'");
  }
  else if (k == "scan.d_values") cfg.scan_d = parse_double_list(value);
  else if (k == "grid.x_min") cfg.grid.x_min = parse_double(k, value);
  else if (k == "grid.x_max") cfg.grid.x_max = parse_double(k, value);
  else if (k == "grid.n_points") cfg.grid.n_points = parse_int(k, value);
  else if (k == "output.directory") cfg.output.directory = trim(value);
  else if (k == "output.formats") cfg.output.formats = trim(value);
  else if (k == "output.wavefunction_times") cfg.output.wavefunction_times = parse_double_list(value);
  else throw domain_error("unknown config key '" + k + "'");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw domain_error(path + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw domain_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (section.empty()) throw domain_error(path + ":" + std::to_string(lineno) + ": key outside any [section]");
    try {
      set_key(cfg, section + "." + key, value);
    } catch (const domain_error& e) {
      throw domain_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key_eq_value) {
  size_t eq = key_eq_value.find('=');
  if (eq == std::string::npos)
    throw domain_error("--set expects section.key=value, got '" + key_eq_value + "'");
  set_key(cfg, trim(key_eq_value.substr(0, eq)), key_eq_value.substr(eq + 1));
}

void validate(const RunConfig& cfg) {
  if (!(cfg.physical.m > 0.0)) throw domain_error("physical.m must be positive");
  if (!(cfg.physical.omega > 0.0)) throw domain_error("physical.omega must be positive");
  if (!(cfg.physical.hbar > 0.0)) throw domain_error("physical.hbar must be positive");
  if (!(cfg.well.x_s > 0.0)) throw domain_error("well.x_s must be positive");
  double dc = critical_asymmetry(cfg.physical, cfg.well);
  if (!(std::fabs(cfg.well.d) < dc))
    throw domain_error("well.d: |d| must be below m omega^2/(2 x_s) = " + std::to_string(dc));
  if (cfg.basis.n_max < 4 || cfg.basis.n_max > 64)
    throw domain_error("basis.n_max must be in [4, 64]");
  if (!(cfg.packet.mu > 0.0)) throw domain_error("packet.mu must be positive");
  if (!(cfg.evolution.t_max > 0.0)) throw domain_error("evolution.t_max must be positive");
  if (!(cfg.evolution.dt_out > 0.0)) throw domain_error("evolution.dt_out must be positive");
  if (!(cfg.evolution.rel_tol > 0.0)) throw domain_error("evolution.rel_tol must be positive");
  if (!(cfg.evolution.abs_tol > 0.0)) throw domain_error("evolution.abs_tol must be positive");
  if (!(cfg.grid.x_min < cfg.grid.x_max)) throw domain_error("grid.x_min must be below grid.x_max");
  if (cfg.grid.n_points < 2) throw domain_error("grid.n_points must be >= 2");
  if (cfg.output.formats != "csv" && cfg.output.formats != "json" && cfg.output.formats != "both")
    throw domain_error("output.formats must be csv, json or both");
  if (cfg.output.directory.empty()) throw domain_error("output.directory must not be empty");
}

}  // namespace dwell::cli
