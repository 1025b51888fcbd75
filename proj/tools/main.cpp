#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli/commands.hpp"
#include "dwell/errors.hpp"

namespace cli = dwell::cli;

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  std::string format;
};

void add_common(CLI::App* sub, CommonArgs& a) {
  sub->add_option("--config", a.config_path, "key-value run configuration file");
  sub->add_option("--set", a.sets, "override one key, as section.key=value (repeatable)");
  sub->add_option("--out", a.out_dir, "output directory");
  sub->add_option("--format", a.format, "table formats: csv, json or both");
}

cli::RunConfig make_config(const CommonArgs& a) {
  cli::RunConfig cfg;
  if (!a.config_path.empty()) cfg = cli::load_config(a.config_path);
  for (const auto& kv : a.sets) cli::apply_override(cfg, kv);
  if (!a.out_dir.empty()) cfg.output.directory = a.out_dir;
  if (!a.format.empty()) cli::set_key(cfg, "output.formats", a.format);
  cli::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavepacket dynamics in an asymmetric quartic double well"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);

  CommonArgs common;
  CLI::App* eigen = app.add_subcommand("eigen", "eigenvalues, gaps and well depths for each scan d");
  CLI::App* evolve = app.add_subcommand("evolve", "time series of observables for one packet");
  CLI::App* scan = app.add_subcommand("scan", "max tunneling probability over the scan d values");
  CLI::App* classical = app.add_subcommand("classical", "classical trajectory next to the quantum means");
  for (CLI::App* sub : {eigen, evolve, scan, classical}) add_common(sub, common);

  cli::PlotArgs pargs;
  CLI::App* plot = app.add_subcommand("plot", "render one or two CSV columns as an SVG line plot");
  plot->add_option("csv", pargs.csv_path, "input CSV table")->required();
  plot->add_option("--x", pargs.x_col, "column for the x axis")->required();
  plot->add_option("--y", pargs.y_col, "column for the y axis")->required();
  plot->add_option("--y2", pargs.y2_col, "second y column");
  CLI::Option* hline = plot->add_option("--hline", pargs.hline, "horizontal reference line");
  plot->add_option("--svg", pargs.svg_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  pargs.has_hline = hline->count() > 0;

  try {
    if (eigen->parsed()) return cli::cmd_eigen(make_config(common));
    if (evolve->parsed()) return cli::cmd_evolve(make_config(common));
    if (scan->parsed()) return cli::cmd_scan(make_config(common));
    if (classical->parsed()) return cli::cmd_classical(make_config(common));
    if (plot->parsed()) return cli::cmd_plot(pargs);
  } catch (const dwell::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dwell::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dwell::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
