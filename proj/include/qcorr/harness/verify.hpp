#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/harness/experiments.hpp"

namespace qcorr::harness {

struct Check {
  std::string name;
  double observed = 0.0;
  double threshold = 0.0;
  bool ok = false;
};

struct VerifyReport {
  std::string suite;
  std::size_t samples = 0;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return !checks.empty();
  }

  void print(std::ostream& os) const {
    os << "suite " << suite << " (" << samples << " samples)\n";
    for (const auto& c : checks)
      os << (c.ok ? "  [PASS] " : "  [FAIL] ") << c.name << ": observed " << format_double(c.observed)
         << ", limit " << format_double(c.threshold) << '\n';
    os << (passed() ? "OK" : "VIOLATIONS FOUND") << '\n';
  }
};

inline constexpr std::array<std::string_view, 6> kSuites = {"hierarchy2q", "chain2q", "pure-qudit",
                                                           "families",    "2x3",     "oracle"};

/// Allowed fraction of optimizer runs without convergence.
inline constexpr double kAllowedNonconvergedFraction = 1e-3;

inline std::size_t default_samples(std::string_view suite) {
  if (suite == "hierarchy2q" || suite == "chain2q") return 100000;
  if (suite == "pure-qudit") return 3000;
  if (suite == "families") return 101;
  if (suite == "2x3") return 10000;
  if (suite == "oracle") return 1000;
  throw OutOfRange("unknown suite '" + std::string(suite) + "'");
}

namespace detail {
inline Check at_least(std::string name, double observed, double limit) {
  return {std::move(name), observed, limit, observed >= limit};
}
inline Check at_most(std::string name, double observed, double limit) {
  return {std::move(name), observed, limit, observed <= limit};
}
inline Check below(std::string name, double observed, double limit) {
  return {std::move(name), observed, limit, observed < limit};
}
}  // namespace detail

/// Runs an invariant suite. `samples` of 0 selects the suite default (for
/// "families" it is the parameter grid size).
inline VerifyReport verify(std::string_view suite, std::size_t samples, std::uint64_t seed,
                           const OptimizerConfig& optimizer = {},
                           const TwoQubitMeasures& measures = {}) {
  using detail::at_least;
  using detail::at_most;
  using detail::below;

  VerifyReport rep;
  rep.suite = std::string(suite);
  rep.samples = samples ? samples : default_samples(suite);
  ExperimentConfig cfg;
  cfg.samples = rep.samples;
  cfg.seed = seed;
  cfg.optimizer = optimizer;
  std::ostringstream sink;

  if (suite == "hierarchy2q" || suite == "chain2q") {
    const auto s = scatter_2q(cfg, sink, measures);
    rep.checks.push_back(at_least("min(D_G - N^2)", s.min_dg_minus_nsq, -1e-10));
    if (suite == "chain2q") {
      rep.checks.push_back(at_least("min(D_G - Q)", s.min_dg_minus_q, -1e-10));
      rep.checks.push_back(at_least("min(Q - N^2)", s.min_q_minus_nsq, -1e-9));
      rep.checks.push_back(at_most("rows with (Q < 1e-8) != (D_G < 1e-8)",
                                   static_cast<double>(s.zero_set_mismatches), 0.0));
    }
  } else if (suite == "pure-qudit") {
    for (std::size_t d = 2; d <= 7; ++d) {
      cfg.d = d;
      cfg.grid = 50;
      cfg.seed = seed + d;
      const auto s = pure_qudit_scan(cfg, sink);
      const std::string tag = "d=" + std::to_string(d) + " ";
      rep.checks.push_back(at_least(tag + "min(D_G - N^2)", s.min_dg_minus_nsq, -1e-12));
      rep.checks.push_back(at_least(tag + "min(D_G - D_G^low)", s.min_dg_minus_curve, -1e-9));
      rep.checks.push_back(at_most(tag + "saturating family gap", s.max_saturation_gap, 1e-9));
      rep.checks.push_back(at_least(tag + "spectral inequality margin", s.min_spectral_inequality, -1e-12));
      if (d == 2) rep.checks.push_back(at_most(tag + "max|D_G - N^2|", s.max_abs_dg_minus_nsq, 1e-12));
    }
  } else if (suite == "families") {
    cfg.grid = rep.samples;
    for (Family f : {Family::Werner, Family::Isotropic}) {
      for (std::size_t d : {2, 3, 10, 99}) {
        cfg.family = f;
        cfg.d = d;
        const auto s = family_sweep(cfg, sink);
        const std::string tag = std::string(to_string(f)) + " d=" + std::to_string(d) + " ";
        rep.checks.push_back(at_most(tag + "entangled-region D_G(N) relation", s.max_eq29_residual, 1e-12));
        rep.checks.push_back(at_least(tag + "min(D_G - N^2), evaluated on the state", s.min_dg_minus_nsq, -1e-12));
        if (s.numeric_available)
          rep.checks.push_back(at_most(tag + "optimizer vs value on the state", s.max_numeric_vs_direct, 1e-6));
        if (d == 2) rep.checks.push_back(at_most(tag + "two-qubit formula vs closed form", s.max_2q_vs_closed, 1e-10));
      }
    }
  } else if (suite == "2x3") {
    const auto s = scatter_2x3(cfg, sink);
    rep.checks.push_back(at_least("min(D_G - N^2)", s.min_dg_minus_nsq, -1e-6));
    rep.checks.push_back(at_most("non-converged fraction", static_cast<double>(s.nonconverged) / static_cast<double>(s.rows),
                                 kAllowedNonconvergedFraction));
  } else if (suite == "oracle") {
    const auto s = oracle_check(cfg, sink);
    rep.checks.push_back(below("max|numeric - closed|", s.max_numeric_vs_closed, 1e-6));
    rep.checks.push_back(below("max|variational - closed|", s.max_variational_vs_closed, 1e-10));
    rep.checks.push_back(at_least("min(numeric - closed)", s.min_numeric_minus_closed, -1e-8));
    rep.checks.push_back(at_most("non-converged fraction", static_cast<double>(s.nonconverged) / static_cast<double>(s.rows),
                                 kAllowedNonconvergedFraction));
  } else {
    throw OutOfRange("unknown suite '" + std::string(suite) + "'");
  }
  return rep;
}

}  // namespace qcorr::harness
