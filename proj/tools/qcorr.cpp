// qcorr: figure-data experiments and invariant verification for negativity,
// geometric discord and the observable bound Q.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "qcorr/harness/run.hpp"
#include "qcorr/harness/verify.hpp"

namespace {

using namespace qcorr;
using namespace qcorr::harness;

struct CommonOptions {
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::size_t d = 3;
  std::size_t grid = 0;
  std::size_t bins = 200;
  std::size_t rank = 0;
  int restarts = OptimizerConfig{}.restarts;
  double tol = OptimizerConfig{}.convergence_tol;
  std::string side;
  std::string family = "werner";
  std::string out;
  std::string svg;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--samples", o.samples, "Number of random samples");
  cmd->add_option("--seed", o.seed, "64-bit RNG seed");
  cmd->add_option("--d", o.d, "Local dimension (pure-qudit, family-sweep)");
  cmd->add_option("--grid", o.grid, "Grid resolution / sweep steps");
  cmd->add_option("--bins", o.bins, "Envelope bins in N^2 (boundary-2q)");
  cmd->add_option("--rank", o.rank, "Rank of random mixed states (0: full)");
  cmd->add_option("--restarts", o.restarts, "Optimizer restarts");
  cmd->add_option("--tol", o.tol, "Optimizer convergence tolerance");
  cmd->add_option("--measured-side", o.side, "Measured subsystem")->check(CLI::IsMember({"A", "B"}));
  cmd->add_option("--family", o.family, "werner or isotropic")->check(CLI::IsMember({"werner", "isotropic"}));
  cmd->add_option("--out", o.out, "Output CSV path (stdout if omitted)");
  cmd->add_option("--svg", o.svg, "Also render an SVG plot to this path");
}

// Per-experiment defaults when --samples / --grid are not given.
ExperimentConfig make_config(Experiment e, const CommonOptions& o) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.seed = o.seed;
  cfg.d = o.d;
  cfg.bins = o.bins;
  cfg.rank = o.rank;
  cfg.family = o.family == "isotropic" ? Family::Isotropic : Family::Werner;
  if (!o.side.empty()) cfg.measured_side = o.side == "A" ? Subsystem::A : Subsystem::B;
  cfg.optimizer.restarts = o.restarts;
  cfg.optimizer.convergence_tol = o.tol;
  cfg.output_path = o.out;
  cfg.svg_path = o.svg;
  switch (e) {
    case Experiment::Scatter2Q: cfg.samples = 100000; break;
    case Experiment::Scatter2x3: cfg.samples = 10000; break;
    case Experiment::PureQudit: cfg.samples = 30000; cfg.grid = 200; break;
    case Experiment::FamilySweep: cfg.grid = 201; break;
    case Experiment::Boundary2Q: cfg.grid = 401; break;
    case Experiment::OracleCheck: cfg.samples = 1000; break;
    case Experiment::Verify: break;
  }
  if (o.samples) cfg.samples = o.samples;
  if (o.grid) cfg.grid = o.grid;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negativity, geometric discord and Q: experiments and verification"};
  app.require_subcommand(1);

  const std::map<std::string, std::string> experiments = {
      {"scatter-2q", "D_G, Q and N^2 over random two-qubit states"},
      {"scatter-2x3", "Optimized D_G and N^2 over random qubit-qutrit states"},
      {"pure-qudit", "Random pure two-qudit states, lower-bound curve, saturating family"},
      {"family-sweep", "Werner or isotropic parameter sweep"},
      {"boundary-2q", "Upper envelope of D_G at fixed N^2 from rank-two X states"},
      {"oracle-check", "Optimizer against the two-qubit closed forms"},
  };
  std::map<std::string, CommonOptions> options;
  std::map<std::string, CLI::App*> commands;
  for (const auto& [name, help] : experiments) {
    commands[name] = app.add_subcommand(name, help);
    add_common(commands[name], options[name]);
  }

  std::string suite;
  std::size_t verify_samples = 0;
  std::uint64_t verify_seed = 1;
  int verify_restarts = OptimizerConfig{}.restarts;
  double verify_tol = OptimizerConfig{}.convergence_tol;
  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite; exit status 0 iff no violations");
  verify_cmd->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(
      std::vector<std::string>(kSuites.begin(), kSuites.end())));
  verify_cmd->add_option("--samples", verify_samples, "Sample count (suite default if omitted)");
  verify_cmd->add_option("--seed", verify_seed, "64-bit RNG seed");
  verify_cmd->add_option("--restarts", verify_restarts, "Optimizer restarts");
  verify_cmd->add_option("--tol", verify_tol, "Optimizer convergence tolerance");

  AxesSpec plot_axes;
  std::string plot_csv, plot_svg;
  bool plot_lines = false;
  auto* plot_cmd = app.add_subcommand("plot", "Render a harness CSV as SVG");
  plot_cmd->add_option("--csv", plot_csv, "Input CSV")->required();
  plot_cmd->add_option("--svg", plot_svg, "Output SVG")->required();
  plot_cmd->add_option("--x", plot_axes.x_column, "x column")->required();
  plot_cmd->add_option("--y", plot_axes.y_column, "y column")->required();
  plot_cmd->add_option("--group", plot_axes.group_column, "Series column");
  plot_cmd->add_flag("--lines", plot_lines, "Draw lines instead of points");
  plot_cmd->add_flag("--diagonal", plot_axes.diagonal, "Draw y = x");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) {
      OptimizerConfig opt;
      opt.restarts = verify_restarts;
      opt.convergence_tol = verify_tol;
      const auto report = verify(suite, verify_samples, verify_seed, opt);
      report.print(std::cout);
      return report.passed() ? 0 : 1;
    }
    if (*plot_cmd) {
      plot_axes.style = plot_lines ? PlotStyle::Lines : PlotStyle::Points;
      emit_svg_scatter(plot_csv, plot_axes, plot_svg);
      return 0;
    }
    for (const auto& [name, cmd] : commands) {
      if (!*cmd) continue;
      const auto cfg = make_config(*parse_experiment(name), options[name]);
      const std::string footer = run_experiment(cfg);
      if (!cfg.output_path.empty()) std::cerr << "wrote " << cfg.output_path << '\n' << footer;
    }
  } catch (const qcorr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
