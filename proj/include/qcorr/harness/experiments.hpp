#pragma once

// Figure-data experiments. Each experiment writes a CSV table (see csv.hpp)
// to a stream and returns a summary of the invariants it observed; the same
// summaries back the `verify` suites.
//
// Sample i always draws from Rng::stream(seed, i), so output is identical for
// any worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qcorr/harness/csv.hpp"
#include "qcorr/harness/parallel.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

namespace qcorr::harness {

enum class Experiment { Scatter2Q, Scatter2x3, PureQudit, FamilySweep, Boundary2Q, Verify, OracleCheck };
enum class Family { Werner, Isotropic };

inline std::string_view to_string(Family f) { return f == Family::Werner ? "werner" : "isotropic"; }

struct ExperimentConfig {
  Experiment experiment = Experiment::Scatter2Q;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t d = 3;
  std::size_t grid = 101;
  std::size_t bins = 200;
  std::size_t rank = 0;  // 0: full rank (Hilbert-Schmidt measure)
  Family family = Family::Werner;
  std::optional<Subsystem> measured_side;
  OptimizerConfig optimizer;
  std::string output_path;
  std::string svg_path;
};

inline void require_samples(const ExperimentConfig& cfg) {
  if (cfg.samples < 1) throw OutOfRange("samples must be >= 1");
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Random-ensemble rows

struct SampleRecord {
  std::size_t index = 0;
  std::size_t d_a = 0, d_b = 0, rank = 0;
  std::optional<double> param;
  double negativity = 0.0;
  double negativity_sq = 0.0;
  double d_g = 0.0;
  std::optional<double> q;
  Method d_g_method = Method::ClosedForm;
  double optimizer_residual = 0.0;
  bool converged = true;
};

inline void write_record_header(CsvWriter& w) {
  w.header({"index", "d_a", "d_b", "rank", "param", "negativity", "negativity_sq", "d_g", "q",
            "d_g_method", "optimizer_residual", "converged"});
}

inline void write_record(CsvWriter& w, const SampleRecord& r) {
  w.row({std::to_string(r.index), std::to_string(r.d_a), std::to_string(r.d_b),
         std::to_string(r.rank), format_optional(r.param), format_double(r.negativity),
         format_double(r.negativity_sq), format_double(r.d_g), format_optional(r.q),
         std::string(to_string(r.d_g_method)), format_double(r.optimizer_residual),
         r.converged ? "1" : "0"});
}

/// Two-qubit measures used by scatter_2q; replaceable so the verifier can be
/// exercised against a deliberately broken measure.
struct TwoQubitMeasures {
  std::function<double(const DensityMatrix&)> negativity = [](const DensityMatrix& r) {
    return qcorr::negativity(r).value;
  };
  std::function<double(const DensityMatrix&)> d_g = [](const DensityMatrix& r) {
    return geometric_discord_2q(r).value;
  };
  std::function<double(const DensityMatrix&)> q = [](const DensityMatrix& r) {
    return q_lower_bound(r).value;
  };
};

/// Threshold below which a negativity counts as zero.
inline constexpr double kSeparableNegativity = 1e-9;

struct ScatterSummary {
  std::size_t rows = 0;
  double min_dg_minus_nsq = kInf;
  double min_dg_minus_q = kInf;
  double min_q_minus_nsq = kInf;
  double max_dg_separable = 0.0;
  std::size_t separable_rows = 0;
  std::size_t zero_set_mismatches = 0;  // rows where (Q < 1e-8) != (D_G < 1e-8)
  std::size_t nonconverged = 0;
  double max_residual = 0.0;
};

inline ScatterSummary summarize(const std::vector<SampleRecord>& recs) {
  ScatterSummary s;
  s.rows = recs.size();
  for (const auto& r : recs) {
    s.min_dg_minus_nsq = std::min(s.min_dg_minus_nsq, r.d_g - r.negativity_sq);
    if (r.q) {
      s.min_dg_minus_q = std::min(s.min_dg_minus_q, r.d_g - *r.q);
      s.min_q_minus_nsq = std::min(s.min_q_minus_nsq, *r.q - r.negativity_sq);
      if ((*r.q < 1e-8) != (r.d_g < 1e-8)) ++s.zero_set_mismatches;
    }
    if (r.negativity < kSeparableNegativity) {
      ++s.separable_rows;
      s.max_dg_separable = std::max(s.max_dg_separable, r.d_g);
    }
    if (!r.converged) ++s.nonconverged;
    s.max_residual = std::max(s.max_residual, r.optimizer_residual);
  }
  return s;
}

inline void write_summary(CsvWriter& w, const ScatterSummary& s) {
  w.comment("rows", static_cast<double>(s.rows));
  w.comment("min_dg_minus_nsq", s.min_dg_minus_nsq);
  if (s.min_dg_minus_q != kInf) {
    w.comment("min_dg_minus_q", s.min_dg_minus_q);
    w.comment("min_q_minus_nsq", s.min_q_minus_nsq);
  }
  w.comment("max_dg_separable", s.max_dg_separable);
  w.comment("nonconverged", static_cast<double>(s.nonconverged));
}

/// Hilbert-Schmidt random two-qubit states with closed-form D_G, Q and N.
inline ScatterSummary scatter_2q(const ExperimentConfig& cfg, std::ostream& os,
                                 const TwoQubitMeasures& measures = {}) {
  require_samples(cfg);
  const std::size_t rank = cfg.rank ? cfg.rank : 4;
  auto recs = parallel_map<SampleRecord>(cfg.samples, [&](std::size_t i) {
    Rng rng = Rng::stream(cfg.seed, i);
    const DensityMatrix rho = random_mixed(2, 2, rank, rng);
    SampleRecord r;
    r.index = i;
    r.d_a = r.d_b = 2;
    r.rank = rank;
    r.negativity = measures.negativity(rho);
    r.negativity_sq = r.negativity * r.negativity;
    r.d_g = measures.d_g(rho);
    r.q = measures.q(rho);
    return r;
  });
  CsvWriter w(os);
  write_record_header(w);
  for (const auto& r : recs) write_record(w, r);
  const auto s = summarize(recs);
  write_summary(w, s);
  return s;
}

/// Random 2 x 3 mixed states with numerically optimized D_G, measured on the
/// qubit unless configured otherwise.
inline ScatterSummary scatter_2x3(const ExperimentConfig& cfg, std::ostream& os) {
  require_samples(cfg);
  const std::size_t rank = cfg.rank ? cfg.rank : 6;
  const Subsystem side = cfg.measured_side.value_or(Subsystem::A);
  auto recs = parallel_map<SampleRecord>(cfg.samples, [&](std::size_t i) {
    Rng rng = Rng::stream(cfg.seed, i);
    const DensityMatrix rho = random_mixed(2, 3, rank, rng);
    SampleRecord r;
    r.index = i;
    r.d_a = 2;
    r.d_b = 3;
    r.rank = rank;
    r.negativity = negativity(rho).value;
    r.negativity_sq = r.negativity * r.negativity;
    const MeasureValue dg = geometric_discord_numeric(rho, side, cfg.optimizer);
    r.d_g = dg.value;
    r.d_g_method = dg.method;
    r.optimizer_residual = dg.residual;
    r.converged = dg.converged;
    return r;
  });
  CsvWriter w(os);
  w.comment(std::string("measured_side=") + (side == Subsystem::A ? "A" : "B"));
  write_record_header(w);
  for (const auto& r : recs) write_record(w, r);
  const auto s = summarize(recs);
  write_summary(w, s);
  return s;
}

// ---------------------------------------------------------------------------
// Pure two-qudit states

struct PureQuditSummary {
  std::size_t d = 0;
  std::size_t rows = 0;
  double min_dg_minus_nsq = kInf;
  double max_abs_dg_minus_nsq = 0.0;
  double min_dg_minus_curve = kInf;
  double max_saturation_gap = 0.0;
  /// min over samples of 4 sum_{i<j} a_i a_j - 2/(d(d-1)) [(sum sqrt a_i)^2 - 1]^2
  double min_spectral_inequality = kInf;
};

inline double clamp_unit(double n) { return std::clamp(n, 0.0, 1.0); }

inline double spectral_inequality_margin(const SchmidtSpectrum& alpha, std::size_t d) {
  double pairs = 0.0, roots = 0.0;
  const auto a = alpha.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    roots += std::sqrt(a[i]);
    for (std::size_t j = i + 1; j < a.size(); ++j) pairs += a[i] * a[j];
  }
  const double dd = static_cast<double>(d);
  return 4.0 * pairs - 2.0 / (dd * (dd - 1.0)) * std::pow(roots * roots - 1.0, 2);
}

/// Random Schmidt spectra plus the analytic lower-bound curve and the
/// saturating family, for one dimension d in [2, 7].
inline PureQuditSummary pure_qudit_scan(const ExperimentConfig& cfg, std::ostream& os) {
  require_samples(cfg);
  const std::size_t d = cfg.d;
  if (d < 2 || d > 7) throw OutOfRange("pure qudit scan needs 2 <= d <= 7");
  const std::size_t grid = std::max<std::size_t>(cfg.grid, 2);

  struct Row {
    double n, dg, low, ineq;
  };
  auto rows = parallel_map<Row>(cfg.samples, [&](std::size_t i) {
    Rng rng = Rng::stream(cfg.seed, i);
    const SchmidtSpectrum alpha = random_schmidt(d, rng);
    const double n = negativity_pure(alpha, d).value;
    const double dg = geometric_discord_pure(alpha, d).value;
    return Row{n, dg, dg_lower_bound_curve(clamp_unit(n), d), spectral_inequality_margin(alpha, d)};
  });

  PureQuditSummary s;
  s.d = d;
  CsvWriter w(os);
  w.header({"kind", "d", "index", "param", "negativity", "negativity_sq", "d_g", "d_g_low"});
  const std::string ds = std::to_string(d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    w.row({"sample", ds, std::to_string(i), "", format_double(r.n), format_double(r.n * r.n),
           format_double(r.dg), format_double(r.low)});
    s.min_dg_minus_nsq = std::min(s.min_dg_minus_nsq, r.dg - r.n * r.n);
    s.max_abs_dg_minus_nsq = std::max(s.max_abs_dg_minus_nsq, std::abs(r.dg - r.n * r.n));
    s.min_dg_minus_curve = std::min(s.min_dg_minus_curve, r.dg - r.low);
    s.min_spectral_inequality = std::min(s.min_spectral_inequality, r.ineq);
  }
  for (std::size_t i = 0; i < grid; ++i) {
    const double n = static_cast<double>(i) / static_cast<double>(grid - 1);
    const double low = dg_lower_bound_curve(n, d);
    w.row({"curve", ds, std::to_string(i), format_double(n), format_double(n),
           format_double(n * n), format_double(low), format_double(low)});
  }
  const double theta_min = saturating_theta_min(d);
  for (std::size_t i = 0; i < grid; ++i) {
    const double theta =
        theta_min + (std::numbers::pi / 2 - theta_min) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const SchmidtSpectrum alpha = saturating_schmidt(d, theta);
    const double n = negativity_pure(alpha, d).value;
    const double dg = geometric_discord_pure(alpha, d).value;
    const double low = dg_lower_bound_curve(clamp_unit(n), d);
    s.max_saturation_gap = std::max(s.max_saturation_gap, std::abs(dg - low));
    w.row({"saturating", ds, std::to_string(i), format_double(theta), format_double(n),
           format_double(n * n), format_double(dg), format_double(low)});
  }
  s.rows = rows.size();
  w.comment("rows", static_cast<double>(s.rows));
  w.comment("min_dg_minus_nsq", s.min_dg_minus_nsq);
  w.comment("min_dg_minus_curve", s.min_dg_minus_curve);
  w.comment("max_saturation_gap", s.max_saturation_gap);
  w.comment("min_spectral_inequality", s.min_spectral_inequality);
  return s;
}

// ---------------------------------------------------------------------------
// Werner / isotropic sweeps

/// Largest d for which density matrices are built (and optimized) in sweeps.
inline constexpr std::size_t kMaxExplicitFamilyDim = 4;

struct FamilySummary {
  Family family = Family::Werner;
  std::size_t d = 0;
  std::size_t rows = 0;
  double max_eq29_residual = 0.0;              // entangled rows, published forms
  double max_numeric_vs_closed = 0.0;          // d <= 4
  double max_numeric_vs_direct = 0.0;          // d <= 4
  double max_2q_vs_closed = 0.0;               // d == 2
  double max_negativity_vs_direct = 0.0;       // d <= 4, matrix vs analytic
  double min_dg_minus_nsq_paper = kInf;
  double min_dg_minus_nsq = kInf;
  double max_abs_dg_minus_param_sq = 0.0;      // Werner: |D_G - k^2|
  std::size_t separable_rows = 0;
  std::size_t separable_rows_with_discord = 0;  // N = 0 in both forms and D_G > 0
  bool numeric_available = false;
};

/// Family sweep over k in [-1, 1] (Werner) or p in [0, 1] (isotropic).
inline FamilySummary family_sweep(const ExperimentConfig& cfg, std::ostream& os) {
  const std::size_t d = cfg.d;
  const std::size_t steps = cfg.grid;
  if (d < 2) throw OutOfRange("family dimension must be >= 2");
  if (steps < 2) throw OutOfRange("grid must be >= 2");
  const bool werner_family = cfg.family == Family::Werner;
  const bool explicit_matrices = d <= kMaxExplicitFamilyDim;
  const double dd = static_cast<double>(d);

  struct Row {
    double param;
    FamilyValues closed, direct;
    std::optional<double> n_matrix, dg_2q, dg_numeric;
  };
  auto rows = parallel_map<Row>(steps, [&](std::size_t i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    Row r;
    r.param = werner_family ? std::clamp(-1.0 + 2.0 * t, -1.0, 1.0) : t;
    r.closed = werner_family ? werner_closed(d, r.param) : isotropic_closed(d, r.param);
    r.direct = werner_family ? werner_direct(d, r.param) : isotropic_closed(d, r.param);
    if (explicit_matrices) {
      const DensityMatrix rho = werner_family ? werner(d, r.param) : isotropic(d, r.param);
      r.n_matrix = negativity(rho).value;
      if (d == 2) r.dg_2q = geometric_discord_2q(rho).value;
      r.dg_numeric = geometric_discord_numeric(rho, Subsystem::B, cfg.optimizer).value;
    }
    return r;
  });

  FamilySummary s;
  s.family = cfg.family;
  s.d = d;
  s.rows = rows.size();
  s.numeric_available = explicit_matrices;
  CsvWriter w(os);
  w.header({"family", "d", "param", "negativity_paper", "negativity", "d_g_closed", "d_g_direct",
            "d_g_2q", "d_g_numeric", "eq29_residual"});
  for (const auto& r : rows) {
    const double n_def = r.n_matrix.value_or(r.direct.negativity);
    const bool entangled = r.closed.negativity > 0.0;
    std::optional<double> eq29;
    if (entangled) {
      eq29 = std::abs(r.closed.d_g - family_dg_from_negativity(r.closed.negativity, d));
      s.max_eq29_residual = std::max(s.max_eq29_residual, *eq29);
    }
    if (r.dg_numeric) {
      s.max_numeric_vs_closed = std::max(s.max_numeric_vs_closed, std::abs(*r.dg_numeric - r.closed.d_g));
      s.max_numeric_vs_direct = std::max(s.max_numeric_vs_direct, std::abs(*r.dg_numeric - r.direct.d_g));
    }
    if (r.n_matrix)
      s.max_negativity_vs_direct =
          std::max(s.max_negativity_vs_direct, std::abs(*r.n_matrix - r.direct.negativity));
    if (r.dg_2q) s.max_2q_vs_closed = std::max(s.max_2q_vs_closed, std::abs(*r.dg_2q - r.closed.d_g));
    s.min_dg_minus_nsq_paper =
        std::min(s.min_dg_minus_nsq_paper, r.closed.d_g - r.closed.negativity * r.closed.negativity);
    s.min_dg_minus_nsq = std::min(s.min_dg_minus_nsq, r.direct.d_g - n_def * n_def);
    if (werner_family)
      s.max_abs_dg_minus_param_sq =
          std::max(s.max_abs_dg_minus_param_sq, std::abs(r.closed.d_g - r.param * r.param));
    if (r.closed.negativity == 0.0 && n_def < kSeparableNegativity) {
      ++s.separable_rows;
      const bool trivial = werner_family ? std::abs(r.param + 1.0 / dd) < 1e-12
                                         : std::abs(r.param - 1.0 / (dd * dd)) < 1e-12;
      if (!trivial && r.closed.d_g > 0.0 && r.direct.d_g > 0.0) ++s.separable_rows_with_discord;
    }
    w.row({std::string(to_string(cfg.family)), std::to_string(d), format_double(r.param),
           format_double(r.closed.negativity), format_double(n_def), format_double(r.closed.d_g),
           format_double(r.direct.d_g), format_optional(r.dg_2q), format_optional(r.dg_numeric),
           format_optional(eq29)});
  }
  w.comment("max_eq29_residual", s.max_eq29_residual);
  if (explicit_matrices) {
    w.comment("max_numeric_vs_closed", s.max_numeric_vs_closed);
    w.comment("max_numeric_vs_direct", s.max_numeric_vs_direct);
  }
  w.comment("min_dg_minus_nsq", s.min_dg_minus_nsq);
  return s;
}

// ---------------------------------------------------------------------------
// Upper boundary of the two-qubit D_G vs N^2 plane

struct BoundarySummary {
  std::size_t admissible_points = 0;
  std::size_t bins_filled = 0;
  double separable_max = 0.0;       // max D_G on the separability edge ad = bc
  double separable_max_negativity = 0.0;
  double top_bin_max = 0.0;         // envelope in the bin containing N^2 = 1
  double top_bin_nsq = 0.0;
  double min_envelope_minus_nsq = kInf;
  double min_dg_minus_nsq = kInf;   // over all admissible grid states
};

/// Sweeps the admissible (a, c) region of the rank-two X family on a
/// grid x grid lattice, bins states by N^2 and records max D_G per bin. The
/// N^2 = 0 end is resolved separately by bisecting for ad = bc along each
/// grid line in a.
inline BoundarySummary boundary_2q(const ExperimentConfig& cfg, std::ostream& os) {
  const std::size_t grid = cfg.grid;
  const std::size_t bins = cfg.bins;
  if (grid < 10) throw OutOfRange("boundary grid must be >= 10");
  if (bins < 1) throw OutOfRange("bins must be >= 1");
  auto coord = [&](std::size_t i) { return 0.5 * static_cast<double>(i) / static_cast<double>(grid - 1); };

  struct Point {
    bool admissible = false;
    double n_sq = 0.0, d_g = 0.0, edge = 0.0;  // edge = a d - b c
  };
  struct Line {
    std::vector<Point> points;
    double sep_dg = -1.0, sep_n = 0.0, sep_c = 0.0;
  };

  auto lines = parallel_map<Line>(grid, [&](std::size_t ia) {
    const double a = coord(ia);
    Line line;
    line.points.resize(grid);
    for (std::size_t ic = 0; ic < grid; ++ic) {
      const double c = coord(ic);
      Point& p = line.points[ic];
      try {
        const auto diag = x_boundary_diagonal(a, c);
        const DensityMatrix rho = x_boundary_state(a, c);
        const double n = negativity(rho).value;
        p = {true, n * n, geometric_discord_2q(rho).value, diag[0] * diag[3] - diag[1] * diag[2]};
      } catch (const Error&) {
        p.admissible = false;
      }
    }
    // Bisect every sign change of ad - bc between admissible neighbours.
    for (std::size_t ic = 0; ic + 1 < grid; ++ic) {
      const Point &lo_p = line.points[ic], &hi_p = line.points[ic + 1];
      if (!lo_p.admissible || !hi_p.admissible) continue;
      if ((lo_p.edge > 0.0) == (hi_p.edge > 0.0) && lo_p.edge != 0.0) continue;
      double lo = coord(ic), hi = coord(ic + 1);
      const bool lo_positive = lo_p.edge > 0.0;
      for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        double e;
        try {
          const auto dm = x_boundary_diagonal(a, mid);
          e = dm[0] * dm[3] - dm[1] * dm[2];
        } catch (const Error&) {
          break;
        }
        if ((e > 0.0) == lo_positive) lo = mid;
        else hi = mid;
      }
      for (double c : {lo, hi}) {
        try {
          const DensityMatrix rho = x_boundary_state(a, c);
          const double n = negativity(rho).value;
          if (n >= kSeparableNegativity) continue;
          const double dg = geometric_discord_2q(rho).value;
          if (dg > line.sep_dg) {
            line.sep_dg = dg;
            line.sep_n = n;
            line.sep_c = c;
          }
        } catch (const Error&) {
        }
      }
    }
    return line;
  });

  struct Bin {
    bool filled = false;
    double d_g = -1.0, n_sq = 0.0, a = 0.0, c = 0.0;
  };
  std::vector<Bin> env(bins);
  BoundarySummary s;
  double sep_a = 0.0, sep_c = 0.0;
  for (std::size_t ia = 0; ia < grid; ++ia) {
    const Line& line = lines[ia];
    if (line.sep_dg > s.separable_max) {
      s.separable_max = line.sep_dg;
      s.separable_max_negativity = line.sep_n;
      sep_a = coord(ia);
      sep_c = line.sep_c;
    }
    for (std::size_t ic = 0; ic < grid; ++ic) {
      const Point& p = line.points[ic];
      if (!p.admissible) continue;
      ++s.admissible_points;
      s.min_dg_minus_nsq = std::min(s.min_dg_minus_nsq, p.d_g - p.n_sq);
      auto b = static_cast<std::size_t>(p.n_sq * static_cast<double>(bins));
      b = std::min(b, bins - 1);
      if (p.d_g > env[b].d_g) env[b] = {true, p.d_g, p.n_sq, coord(ia), coord(ic)};
    }
  }

  CsvWriter w(os);
  w.header({"kind", "bin", "n_sq_lo", "n_sq_hi", "n_sq", "d_g_max", "a", "c", "pure_lower"});
  w.row({"separable", "-1", "0", "0", format_double(s.separable_max_negativity * s.separable_max_negativity),
         format_double(s.separable_max), format_double(sep_a), format_double(sep_c), "0"});
  const double width = 1.0 / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    if (!env[b].filled) continue;
    ++s.bins_filled;
    const double lo = width * static_cast<double>(b), hi = width * static_cast<double>(b + 1);
    s.min_envelope_minus_nsq = std::min(s.min_envelope_minus_nsq, env[b].d_g - env[b].n_sq);
    w.row({"bin", std::to_string(b), format_double(lo), format_double(hi), format_double(env[b].n_sq),
           format_double(env[b].d_g), format_double(env[b].a), format_double(env[b].c),
           format_double(0.5 * (lo + hi))});
  }
  if (env[bins - 1].filled) {
    s.top_bin_max = env[bins - 1].d_g;
    s.top_bin_nsq = env[bins - 1].n_sq;
  }
  w.comment("admissible_points", static_cast<double>(s.admissible_points));
  w.comment("separable_max", s.separable_max);
  w.comment("top_bin_max", s.top_bin_max);
  w.comment("min_envelope_minus_nsq", s.min_envelope_minus_nsq);
  return s;
}

// ---------------------------------------------------------------------------
// Optimizer against the two-qubit closed forms

struct OracleSummary {
  std::size_t rows = 0;
  double max_numeric_vs_closed = 0.0;
  double max_variational_vs_closed = 0.0;
  double min_numeric_minus_closed = kInf;
  std::size_t nonconverged = 0;
};

inline OracleSummary oracle_check(const ExperimentConfig& cfg, std::ostream& os) {
  require_samples(cfg);
  const Subsystem side = Subsystem::B;
  struct Row {
    double closed, variational, numeric, residual;
    bool converged;
  };
  auto rows = parallel_map<Row>(cfg.samples, [&](std::size_t i) {
    Rng rng = Rng::stream(cfg.seed, i);
    const DensityMatrix rho = random_mixed(2, 2, cfg.rank ? cfg.rank : 4, rng);
    const MeasureValue num = geometric_discord_numeric(rho, side, cfg.optimizer);
    return Row{geometric_discord_2q(rho).value, geometric_discord_2q_variational(rho).value,
               num.value, num.residual, num.converged};
  });
  OracleSummary s;
  s.rows = rows.size();
  CsvWriter w(os);
  w.header({"index", "d_g_closed", "d_g_variational", "d_g_numeric", "abs_diff_numeric",
            "abs_diff_variational", "optimizer_residual", "converged"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double dn = std::abs(r.numeric - r.closed), dv = std::abs(r.variational - r.closed);
    s.max_numeric_vs_closed = std::max(s.max_numeric_vs_closed, dn);
    s.max_variational_vs_closed = std::max(s.max_variational_vs_closed, dv);
    s.min_numeric_minus_closed = std::min(s.min_numeric_minus_closed, r.numeric - r.closed);
    if (!r.converged) ++s.nonconverged;
    w.row({std::to_string(i), format_double(r.closed), format_double(r.variational),
           format_double(r.numeric), format_double(dn), format_double(dv), format_double(r.residual),
           r.converged ? "1" : "0"});
  }
  w.comment("max_numeric_vs_closed", s.max_numeric_vs_closed);
  w.comment("max_variational_vs_closed", s.max_variational_vs_closed);
  w.comment("min_numeric_minus_closed", s.min_numeric_minus_closed);
  return s;
}

}  // namespace qcorr::harness
