#include "commands.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <thread>
#include <vector>

#include "json.hpp"

#include "dwell/errors.hpp"
#include "dwell/observables.hpp"
#include "svg.hpp"
#include "table.hpp"

namespace dwell::cli {

namespace {

using nlohmann::json;
using clock_type = std::chrono::steady_clock;

json config_json(const RunConfig& c) {
  json j;
  j["physical"] = {{"m", c.physical.m}, {"omega", c.physical.omega}, {"hbar", c.physical.hbar}};
  j["well"] = {{"x_s", c.well.x_s}, {"d", c.well.d}};
  j["basis"] = {{"n_max", c.basis.n_max}};
  j["packet"] = {{"x0", c.packet.x0}, {"p0", c.packet.p0}, {"mu", c.packet.mu}, {"alpha", c.packet.alpha}};
  j["evolution"] = {{"t_max", c.evolution.t_max},
                    {"dt_out", c.evolution.dt_out},
                    {"rel_tol", c.evolution.rel_tol},
                    {"abs_tol", c.evolution.abs_tol},
                    {"method", c.evolution.method == Method::A ? "A" : "B"}};
  j["scan"] = {{"d_values", c.scan_d}};
  j["grid"] = {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"n_points", c.grid.n_points}};
  j["output"] = {{"directory", c.output.directory},
                 {"formats", c.output.formats},
                 {"wavefunction_times", c.output.wavefunction_times}};
  return j;
}

std::string json_records(const std::vector<std::string>& cols, const std::vector<std::vector<double>>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json rec = json::object();
    for (size_t k = 0; k < cols.size(); ++k) rec[cols[k]] = r[k];
    arr.push_back(std::move(rec));
  }
  return arr.dump(2) + "\n";
}

// collects produced file names; all writes go through the tmp+rename path
class OutputWriter {
 public:
  explicit OutputWriter(const OutputConfig& out) : dir_(out.directory), formats_(out.formats) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw io_error("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  void table(const std::string& stem, const std::vector<std::string>& cols,
             const std::vector<std::vector<double>>& rows) {
    if (formats_ != "json") file(stem + ".csv", to_csv(cols, rows));
    if (formats_ != "csv") file(stem + ".json", json_records(cols, rows));
  }

  void file(const std::string& name, const std::string& content) {
    write_text_atomic((dir_ / name).string(), content);
    files_.push_back(name);
  }

  void manifest(const std::string& command, const RunConfig& cfg, const json& extra, double seconds) {
    json m;
    m["version"] = kToolVersion;
    m["command"] = command;
    m["config"] = config_json(cfg);
    m["files"] = files_;
    m["duration_seconds"] = seconds;
    m.update(extra);
    write_text_atomic((dir_ / "manifest.json").string(), m.dump(2) + "\n");
  }

 private:
  std::filesystem::path dir_;
  std::string formats_;
  std::vector<std::string> files_;
};

struct Pipeline {
  QuarticCoefficients quartic;
  EnergyMatrix matrix;
  EigenSystem eigen;
  CoefficientState c0;
  double captured;
};

Pipeline build_pipeline(const RunConfig& cfg, double d) {
  Pipeline pl;
  WellShape w = cfg.well;
  w.d = d;
  pl.quartic = quartic_from_well(cfg.physical, w);
  pl.matrix = build_matrix(pl.quartic, cfg.physical, cfg.basis);
  pl.eigen = diagonalize(pl.matrix);
  pl.c0 = initial_coefficients(cfg.packet, cfg.physical, cfg.basis);
  pl.captured = pl.c0.norm();
  return pl;
}

std::vector<CoefficientState> run_states(const Pipeline& pl, const RunConfig& cfg) {
  if (cfg.evolution.method == Method::A)
    return evolve_spectral_a(pl.c0, pl.matrix, cfg.physical, cfg.evolution);
  return evolve_spectral_b(to_eigen_amplitudes(pl.c0, pl.eigen), pl.eigen, cfg.physical, cfg.evolution);
}

void warn_captured(double captured) {
  if (captured < 0.999)
    std::cerr << "warning: basis holds only " << captured
              << " of the packet norm; raise basis.n_max or narrow the packet\n";
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

unsigned scan_threads(size_t npoints) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  auto n = static_cast<unsigned>(std::min<size_t>(npoints, hw));
  if (const char* env = std::getenv("DWELL_THREADS")) {
    int cap = 0;
    auto [p, ec] = std::from_chars(env, env + std::strlen(env), cap);
    if (ec != std::errc{} || *p != '\0' || cap < 1)
      throw domain_error("DWELL_THREADS must be a positive integer");
    n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

}  // namespace

int cmd_eigen(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.scan_d.empty()) throw domain_error("scan.d_values: need at least one asymmetry value");
  if (cfg.basis.n_max < 10)
    throw domain_error("basis.n_max: the spectrum report lists E_0..E_10, need n_max >= 10");
  auto t0 = clock_type::now();

  std::vector<std::string> cols = {"d", "delta_u", "u_minus", "u_barrier", "u_plus"};
  for (int nu = 0; nu <= 10; ++nu) cols.push_back("e" + std::to_string(nu));
  cols.push_back("delta");
  cols.push_back("delta_prime");

  std::vector<std::vector<double>> rows;
  for (double d : cfg.scan_d) {
    WellShape w = cfg.well;
    w.d = d;
    StationaryPoints sp = stationary_points(cfg.physical, w);
    EigenSystem es = diagonalize(build_matrix(quartic_from_well(cfg.physical, w), cfg.physical, cfg.basis));
    SpectralGaps gaps = spectral_gaps(es);
    std::vector<double> row = {d, sp.delta_u, sp.u_minus, sp.u_barrier, sp.u_plus};
    for (int nu = 0; nu <= 10; ++nu) row.push_back(es.values[nu]);
    row.push_back(gaps.delta);
    row.push_back(gaps.delta_prime);
    rows.push_back(std::move(row));
  }

  OutputWriter out(cfg.output);
  out.table("eigen", cols, rows);
  out.manifest("eigen", cfg, json::object(), seconds_since(t0));
  return 0;
}

int cmd_evolve(const RunConfig& cfg) {
  validate(cfg);
  auto t0 = clock_type::now();

  Pipeline pl = build_pipeline(cfg, cfg.well.d);
  warn_captured(pl.captured);
  std::vector<CoefficientState> states = run_states(pl, cfg);
  OverlapMatrix D = half_line_overlaps(pl.eigen, cfg.physical, cfg.well.x_s);

  std::vector<std::string> cols = {"t",           "x_mean",      "p_mean",        "x_var",       "p_var",
                                   "xp_sym",      "autocorr_re", "autocorr_im",   "autocorr_abs2",
                                   "uncertainty", "p_right",     "norm",          "energy"};
  std::vector<std::vector<double>> rows;
  rows.reserve(states.size());
  for (const auto& s : states) {
    ObservableSample ob = expectations(s, cfg.physical);
    cplx corr = autocorrelation(s, pl.c0);
    rows.push_back({s.t, ob.x_mean, ob.p_mean, ob.x_var(), ob.p_var(), ob.xp_sym, corr.real(), corr.imag(),
                    std::norm(corr), ob.uncertainty, tunneling_probability(s, pl.eigen, D), ob.norm,
                    state_energy(s, pl.matrix)});
  }

  OutputWriter out(cfg.output);
  out.table("series", cols, rows);

  if (!cfg.output.wavefunction_times.empty()) {
    std::vector<double> x(cfg.grid.n_points);
    double dxg = (cfg.grid.x_max - cfg.grid.x_min) / (cfg.grid.n_points - 1);
    for (int i = 0; i < cfg.grid.n_points; ++i) x[i] = cfg.grid.x_min + dxg * i;
    std::vector<std::vector<double>> wrows;
    for (double treq : cfg.output.wavefunction_times) {
      auto idx = static_cast<long>(std::lround(treq / cfg.evolution.dt_out));
      idx = std::clamp(idx, 0l, static_cast<long>(states.size()) - 1);
      const auto& s = states[static_cast<size_t>(idx)];
      std::vector<cplx> psi = wavefunction_on_grid(s, cfg.physical, x);
      for (size_t i = 0; i < x.size(); ++i)
        wrows.push_back({s.t, x[i], psi[i].real(), psi[i].imag(), std::norm(psi[i])});
    }
    out.table("wavefunction", {"t", "x", "re", "im", "abs2"}, wrows);
  }

  json extra;
  extra["captured_norm"] = pl.captured;
  out.manifest("evolve", cfg, extra, seconds_since(t0));
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.scan_d.empty()) throw domain_error("scan.d_values: need at least one asymmetry value");
  auto t0 = clock_type::now();

  struct Point {
    bool ok = false;
    double d = 0, delta_u = 0, p_r_max = 0, t_at_max = 0, captured = 0;
    std::string error;
  };
  const size_t n = cfg.scan_d.size();
  std::vector<Point> points(n);
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      Point& r = points[i];
      r.d = cfg.scan_d[i];
      try {
        WellShape w = cfg.well;
        w.d = r.d;
        r.delta_u = stationary_points(cfg.physical, w).delta_u;
        Pipeline pl = build_pipeline(cfg, r.d);
        r.captured = pl.captured;
        std::vector<CoefficientState> states = run_states(pl, cfg);
        OverlapMatrix D = half_line_overlaps(pl.eigen, cfg.physical, cfg.well.x_s);
        double best = -1.0, t_best = 0.0;
        for (const auto& s : states) {
          double p = tunneling_probability(s, pl.eigen, D);
          if (p > best) {
            best = p;
            t_best = s.t;
          }
        }
        r.p_r_max = best;
        r.t_at_max = t_best;
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };

  unsigned nthreads = scan_threads(n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<std::vector<double>> rows;
  json norms = json::array();
  json failures = json::array();
  for (const Point& r : points) {
    if (r.ok) {
      rows.push_back({r.d, r.delta_u, r.p_r_max, r.t_at_max});
      norms.push_back({{"d", r.d}, {"captured_norm", r.captured}});
    } else {
      failures.push_back({{"d", r.d}, {"error", r.error}});
      std::cerr << "warning: scan point d=" << r.d << " failed: " << r.error << "\n";
    }
  }
  if (rows.empty()) throw numerical_error("every scan point failed; first error: " + points[0].error);

  OutputWriter out(cfg.output);
  out.table("scan", {"d", "delta_u", "p_r_max", "t_at_max"}, rows);
  json extra;
  extra["captured_norm"] = norms;
  extra["failures"] = failures;
  out.manifest("scan", cfg, extra, seconds_since(t0));
  return 0;
}

int cmd_classical(const RunConfig& cfg) {
  validate(cfg);
  auto t0 = clock_type::now();

  QuarticCoefficients q = quartic_from_well(cfg.physical, cfg.well);
  std::vector<ClassicalState> traj =
      classical_trajectory(cfg.packet.x0, cfg.packet.p0, q, cfg.physical, cfg.evolution);
  std::vector<std::vector<double>> crows;
  crows.reserve(traj.size());
  for (const auto& s : traj) crows.push_back({s.t, s.x, s.p});

  Pipeline pl = build_pipeline(cfg, cfg.well.d);
  warn_captured(pl.captured);
  std::vector<CoefficientState> states = run_states(pl, cfg);
  std::vector<std::vector<double>> qrows;
  qrows.reserve(states.size());
  for (const auto& s : states) {
    ObservableSample ob = expectations(s, cfg.physical);
    qrows.push_back({s.t, ob.x_mean, ob.p_mean});
  }

  OutputWriter out(cfg.output);
  out.table("classical", {"t", "x", "p"}, crows);
  out.table("quantum", {"t", "x_mean", "p_mean"}, qrows);
  json extra;
  extra["captured_norm"] = pl.captured;
  out.manifest("classical", cfg, extra, seconds_since(t0));
  return 0;
}

int cmd_plot(const PlotArgs& args) {
  CsvTable table = read_csv(args.csv_path);
  PlotSpec spec;
  spec.x_col = args.x_col;
  spec.y_col = args.y_col;
  spec.y2_col = args.y2_col;
  spec.has_hline = args.has_hline;
  spec.hline = args.hline;
  write_text_atomic(args.svg_path, render_line_plot(table, spec));
  return 0;
}

}  // namespace dwell::cli
