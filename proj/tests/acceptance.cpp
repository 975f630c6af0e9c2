// Acceptance run: one PASS/FAIL line per criterion, detail lines indented.
// Exit status is 0 only if every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/harness/experiments.hpp"

using namespace qcorr;
using namespace qcorr::harness;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> details;

  void check(bool pass, const std::string& what, double observed, double limit) {
    std::ostringstream s;
    s << (pass ? "ok   " : "FAIL ") << what << ": observed " << format_double(observed) << ", limit "
      << format_double(limit);
    details.push_back(s.str());
    ok = ok && pass;
  }
  void note(const std::string& text) { details.push_back("info " + text); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.details.push_back(std::string("FAIL exception: ") + e.what());
  }
  const double t = seconds_since(t0);
  std::printf("%s criterion %d: %s (%.1f s)\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), t);
  for (const auto& d : out.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

double det2(const ComplexMatrix& m) { return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real(); }

}  // namespace

int main() {
  std::printf("worker threads: %u\n", thread_count());

  ScatterSummary hs;
  double hs_seconds = 0.0;
  report(1, "D_G >= N^2 on 1e5 Hilbert-Schmidt two-qubit states", [&](Outcome& o) {
    ExperimentConfig cfg;
    cfg.samples = 100000;
    cfg.seed = 20240601;
    std::ostringstream sink;
    const auto t0 = Clock::now();
    hs = scatter_2q(cfg, sink);
    hs_seconds = seconds_since(t0);
    o.check(hs.rows == 100000, "rows", static_cast<double>(hs.rows), 100000);
    o.check(hs.min_dg_minus_nsq >= -1e-10, "min(D_G - N^2)", hs.min_dg_minus_nsq, -1e-10);
    o.check(hs_seconds < 30.0, "runtime [s]", hs_seconds, 30.0);
  });

  report(2, "D_G >= Q >= N^2 (corrected Q) on the same ensemble", [&](Outcome& o) {
    o.check(hs.min_dg_minus_q >= -1e-10, "min(D_G - Q)", hs.min_dg_minus_q, -1e-10);
    o.check(hs.min_q_minus_nsq >= -1e-9, "min(Q - N^2)", hs.min_q_minus_nsq, -1e-9);
  });

  report(3, "pure two-qubit collapse on 1e4 random pure states", [&](Outcome& o) {
    const auto diffs = parallel_map<std::pair<double, double>>(10000, [](std::size_t i) {
      Rng rng = Rng::stream(31337, i);
      const auto rho = random_pure(2, 2, rng);
      const double dg = geometric_discord_2q(rho).value;
      const double n = negativity(rho).value;
      return std::pair{std::abs(dg - n * n), std::abs(dg - 4.0 * det2(partial_trace(rho, Subsystem::A)))};
    });
    double max_n = 0, max_det = 0;
    for (const auto& [a, b] : diffs) {
      max_n = std::max(max_n, a);
      max_det = std::max(max_det, b);
    }
    o.check(max_n <= 1e-10, "max|D_G - N^2|", max_n, 1e-10);
    o.check(max_det <= 1e-10, "max|D_G - 4 det rho_A|", max_det, 1e-10);
  });

  report(4, "exact anchors: separable optimum, swapped state, mixtures", [&](Outcome& o) {
    const auto opt = sep_opt_state();
    const double dg = geometric_discord_2q(opt).value;
    o.check(std::abs(dg - 0.25) <= 1e-10, "|D_G(sep_opt) - 1/4|", std::abs(dg - 0.25), 1e-10);
    const double n = negativity(opt).value;
    o.check(n <= 1e-12, "N(sep_opt)", n, 1e-12);
    const double swapped = geometric_discord_numeric(swap_subsystems(opt), Subsystem::B).value;
    o.check(swapped < 1e-8, "numeric D_G of the swapped state", swapped, 1e-8);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double p = i / 49.0;
      worst = std::max(worst, std::abs(geometric_discord_2q(sep_mixture(p)).value - p * p / 4.0));
    }
    o.check(worst <= 1e-10, "max|D_G(mixture) - p^2/4| over 50 p", worst, 1e-10);
  });

  report(5, "optimizer vs two-qubit closed form on 1e3 states (24 restarts, tol 1e-9)", [&](Outcome& o) {
    ExperimentConfig cfg;
    cfg.samples = 1000;
    cfg.seed = 5;
    cfg.optimizer.restarts = 24;
    cfg.optimizer.convergence_tol = 1e-9;
    std::ostringstream sink;
    const auto t0 = Clock::now();
    const auto s = oracle_check(cfg, sink);
    const double t = seconds_since(t0);
    o.check(s.max_numeric_vs_closed < 1e-6, "max|numeric - closed|", s.max_numeric_vs_closed, 1e-6);
    o.check(s.max_variational_vs_closed < 1e-10, "max|variational - closed|", s.max_variational_vs_closed,
            1e-10);
    o.check(s.min_numeric_minus_closed >= -1e-8, "min(numeric - closed)", s.min_numeric_minus_closed, -1e-8);
    o.check(t < 120.0, "runtime [s]", t, 120.0);
  });

  report(6, "pure qudits d = 2..7: hierarchy, lower-bound curve, saturation", [&](Outcome& o) {
    for (std::size_t d = 2; d <= 7; ++d) {
      ExperimentConfig cfg;
      cfg.samples = 3000;
      cfg.seed = 600 + d;
      cfg.d = d;
      cfg.grid = 50;
      std::ostringstream sink;
      const auto s = pure_qudit_scan(cfg, sink);
      const std::string tag = "d=" + std::to_string(d) + " ";
      o.check(s.min_dg_minus_nsq >= -1e-12, tag + "min(D_G - N^2)", s.min_dg_minus_nsq, -1e-12);
      o.check(s.min_dg_minus_curve >= -1e-9, tag + "min(D_G - D_G^low)", s.min_dg_minus_curve, -1e-9);
      o.check(s.max_saturation_gap <= 1e-9, tag + "saturating family gap (50 angles)", s.max_saturation_gap, 1e-9);
    }
  });

  report(7, "Werner and isotropic families", [&](Outcome& o) {
    for (Family f : {Family::Werner, Family::Isotropic}) {
      for (std::size_t d : {2, 3, 10, 99}) {
        ExperimentConfig cfg;
        cfg.family = f;
        cfg.d = d;
        cfg.grid = 101;
        std::ostringstream sink;
        const auto s = family_sweep(cfg, sink);
        const std::string tag = std::string(to_string(f)) + " d=" + std::to_string(d) + " ";
        o.check(s.max_eq29_residual <= 1e-12, tag + "max|D_G - ((1+dN)/(1+d))^2|, entangled region",
                s.max_eq29_residual, 1e-12);
        if (d <= 3) {
          o.check(s.max_numeric_vs_closed <= 1e-6, tag + "max|optimizer - closed form|", s.max_numeric_vs_closed,
                  1e-6);
          if (f == Family::Werner)
            o.note(tag + "max|optimizer - (dk+1)^2/(d^2-1)^2| = " + format_double(s.max_numeric_vs_direct));
        }
      }
    }
    ExperimentConfig cfg;
    cfg.family = Family::Werner;
    cfg.d = 99;
    cfg.grid = 100;
    std::ostringstream sink;
    const auto s = family_sweep(cfg, sink);
    o.check(s.max_abs_dg_minus_param_sq < 0.03, "werner d=99 max|D_G - k^2| over 100 k", s.max_abs_dg_minus_param_sq,
            0.03);
    double direct = 0.0, nonneg = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double k = std::clamp(-1.0 + 2.0 * i / 99.0, -1.0, 1.0);
      direct = std::max(direct, std::abs(werner_direct(99, k).d_g - k * k));
      if (k >= 0.0) nonneg = std::max(nonneg, std::abs(werner_closed(99, k).d_g - k * k));
    }
    o.note("werner d=99 max|D_G - k^2| restricted to k >= 0: " + format_double(nonneg));
    o.note("werner d=99 max|(dk+1)^2/(d^2-1)^2 - k^2| over 100 k: " + format_double(direct));
  });

  report(8, "D_G >= N^2 on 1e4 random 2x3 mixed states (qubit measured)", [&](Outcome& o) {
    ExperimentConfig cfg;
    cfg.samples = 10000;
    cfg.seed = 23;
    std::ostringstream sink;
    const auto t0 = Clock::now();
    const auto s = scatter_2x3(cfg, sink);
    const double t = seconds_since(t0);
    o.check(s.min_dg_minus_nsq >= -1e-6, "min(D_G - N^2)", s.min_dg_minus_nsq, -1e-6);
    o.note("non-converged rows: " + std::to_string(s.nonconverged) + ", max restart gap " +
           format_double(s.max_residual));
    o.check(t < 900.0, "runtime [s]", t, 900.0);
  });

  report(9, "upper envelope endpoints of the two-qubit D_G vs N^2 plane", [&](Outcome& o) {
    ExperimentConfig cfg;
    cfg.grid = 401;
    cfg.bins = 200;
    std::ostringstream sink;
    const auto s = boundary_2q(cfg, sink);
    o.check(std::abs(s.separable_max - 0.25) <= 1e-4, "|envelope(N^2 = 0) - 1/4|", std::abs(s.separable_max - 0.25),
            1e-4);
    o.check(std::abs(s.top_bin_max - 1.0) <= 1e-4, "|envelope(N^2 = 1) - 1|", std::abs(s.top_bin_max - 1.0), 1e-4);
    o.check(s.min_envelope_minus_nsq >= -1e-10, "min(envelope - N^2)", s.min_envelope_minus_nsq, -1e-10);
    o.note("invariant suites for this criterion are criteria 1, 2, 6 and 8");
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
