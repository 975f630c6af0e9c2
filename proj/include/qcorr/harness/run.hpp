#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "qcorr/harness/experiments.hpp"
#include "qcorr/harness/svg.hpp"

namespace qcorr::harness {

inline std::optional<Experiment> parse_experiment(std::string_view name) {
  if (name == "scatter-2q") return Experiment::Scatter2Q;
  if (name == "scatter-2x3") return Experiment::Scatter2x3;
  if (name == "pure-qudit") return Experiment::PureQudit;
  if (name == "family-sweep") return Experiment::FamilySweep;
  if (name == "boundary-2q") return Experiment::Boundary2Q;
  if (name == "oracle-check") return Experiment::OracleCheck;
  if (name == "verify") return Experiment::Verify;
  return std::nullopt;
}

/// Plot layout used for --svg on each experiment.
inline AxesSpec default_axes(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::Scatter2Q:
    case Experiment::Scatter2x3:
      return {"negativity_sq", "d_g", "N^2", "D_G", "", PlotStyle::Points, true};
    case Experiment::PureQudit:
      return {"negativity_sq", "d_g", "N^2", "D_G", "kind", PlotStyle::Points, true};
    case Experiment::FamilySweep:
      return {"param", "d_g_closed", cfg.family == Family::Werner ? "k" : "p", "D_G", "", PlotStyle::Lines, false};
    case Experiment::Boundary2Q:
      return {"n_sq", "d_g_max", "N^2", "max D_G", "kind", PlotStyle::Lines, true};
    case Experiment::OracleCheck:
      return {"d_g_closed", "d_g_numeric", "D_G closed form", "D_G optimizer", "", PlotStyle::Points, true};
    case Experiment::Verify: break;
  }
  throw OutOfRange("experiment has no plot");
}

/// Runs one experiment, writing CSV to cfg.output_path (stdout when empty)
/// and optionally an SVG. Returns the CSV footer lines.
inline std::string run_experiment(const ExperimentConfig& cfg) {
  std::ostringstream csv;
  switch (cfg.experiment) {
    case Experiment::Scatter2Q: scatter_2q(cfg, csv); break;
    case Experiment::Scatter2x3: scatter_2x3(cfg, csv); break;
    case Experiment::PureQudit: pure_qudit_scan(cfg, csv); break;
    case Experiment::FamilySweep: family_sweep(cfg, csv); break;
    case Experiment::Boundary2Q: boundary_2q(cfg, csv); break;
    case Experiment::OracleCheck: oracle_check(cfg, csv); break;
    case Experiment::Verify: throw OutOfRange("verify is not a CSV experiment");
  }
  const std::string text = csv.str();
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + cfg.output_path);
    out << text;
    if (!out) throw IoError("write failed for " + cfg.output_path);
  }
  if (!cfg.svg_path.empty()) {
    std::istringstream in(text);
    const std::string svg = render_svg(parse_csv(in), default_axes(cfg));
    std::ofstream out(cfg.svg_path);
    if (!out) throw IoError("cannot write " + cfg.svg_path);
    out << svg;
  }
  std::string footer;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);)
    if (!line.empty() && line.front() == '#') footer += line + '\n';
  return footer;
}

}  // namespace qcorr::harness
