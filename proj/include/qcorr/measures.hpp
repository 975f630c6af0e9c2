#pragma once

// Correlation quantifiers: negativity, geometric discord (two-qubit closed
// form, its variational form, and a general multi-start optimizer over
// projective measurements), the observable lower bound Q, pure-state and
// family closed forms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/eigen.hpp"
#include "qcorr/nelder_mead.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class Method { ClosedForm, Variational, Optimizer };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::Variational: return "variational";
    case Method::Optimizer: return "optimizer";
  }
  return "unknown";
}

inline constexpr double kReportClip = 1e-9;

/// Negative values down to -kReportClip are reported as exactly zero.
inline double clip_small_negative(double v) { return (v < 0.0 && v >= -kReportClip) ? 0.0 : v; }

struct MeasureValue {
  double value = 0.0;
  Method method = Method::ClosedForm;
  /// Optimizer gap between the best and second-best restart; 0 for closed forms.
  double residual = 0.0;
  int restarts_used = 0;
  /// False when no optimizer restart met the convergence tolerance.
  bool converged = true;

  static MeasureValue closed(double v) { return {clip_small_negative(v), Method::ClosedForm}; }
};

// ---------------------------------------------------------------------------
// Negativity

/// Normalized negativity (||rho^{t_A}||_1 - 1) / (min(d_A, d_B) - 1).
inline MeasureValue negativity(const DensityMatrix& rho) {
  const std::size_t dm = std::min(rho.dim_a(), rho.dim_b());
  if (dm < 2) return MeasureValue::closed(0.0);
  const double tn = trace_norm(partial_transpose(rho, Subsystem::A));
  return MeasureValue::closed((tn - 1.0) / static_cast<double>(dm - 1));
}

// ---------------------------------------------------------------------------
// Two-qubit closed forms

namespace detail {

inline double largest_symmetric_eigenvalue(const Mat3& m) {
  ComplexMatrix c(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = m[i][j];
  return hermitian_eigenvalues(c).max();
}

/// y y^t + T^t T
inline Mat3 measured_b_correlation(const BlochForm& b) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m[i][j] = b.y[i] * b.y[j];
      for (int k = 0; k < 3; ++k) m[i][j] += b.t[k][i] * b.t[k][j];
    }
  return m;
}

inline void require_two_qubits(const DensityMatrix& rho) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2)
    throw DimensionMismatch("two-qubit state required");
}

}  // namespace detail

/// D_G = 1/2 (|y|^2 + ||T||_2^2 - k_max), k_max the top eigenvalue of
/// y y^t + T^t T. Measurement on B.
inline MeasureValue geometric_discord_2q(const DensityMatrix& rho) {
  detail::require_two_qubits(rho);
  const BlochForm b = bloch_decompose(rho);
  const Mat3 m = detail::measured_b_correlation(b);
  const double total = m[0][0] + m[1][1] + m[2][2];  // |y|^2 + ||T||^2
  return MeasureValue::closed(0.5 * (total - detail::largest_symmetric_eigenvalue(m)));
}

/// 2 [Tr(C^t C) - max_a Tr(A C^t C A^t)] with C = R/2 and A the 2x4 isometry
/// built from a unit 3-vector a; the maximum is M_00 plus the top eigenvalue
/// of the lower-right 3x3 block of M = C^t C.
inline MeasureValue geometric_discord_2q_variational(const DensityMatrix& rho) {
  detail::require_two_qubits(rho);
  std::array<std::array<double, 4>, 4> c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      c[i][j] =
          0.5 * trace_of_product(rho.matrix(), kron(pauli::matrix(i), pauli::matrix(j))).real();
  std::array<std::array<double, 4>, 4> m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) m[i][j] += c[k][i] * c[k][j];
  Mat3 lower{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) lower[i][j] = m[i + 1][j + 1];
  const double trace_m = m[0][0] + m[1][1] + m[2][2] + m[3][3];
  const double best = m[0][0] + detail::largest_symmetric_eigenvalue(lower);
  MeasureValue v = MeasureValue::closed(2.0 * (trace_m - best));
  v.method = Method::Variational;
  return v;
}

namespace detail {
// 2 Tr S - sqrt(6 Tr S^2 - 2 (Tr S)^2) with the leading coefficient supplied.
inline double q_from_s(const BlochForm& b, double trace_coefficient) {
  Mat3 s = measured_b_correlation(b);
  for (auto& row : s)
    for (auto& x : row) x *= 0.25;
  const double tr = s[0][0] + s[1][1] + s[2][2];
  double tr2 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tr2 += s[i][j] * s[j][i];
  const double disc = std::max(0.0, 6.0 * tr2 - 2.0 * tr * tr);
  return (2.0 / 3.0) * (trace_coefficient * tr - std::sqrt(disc));
}
}  // namespace detail

/// Observable lower bound Q = 2/3 [2 Tr S - sqrt(6 Tr S^2 - 2 (Tr S)^2)],
/// S = (y y^t + T^t T)/4, clipped at 0. Equals D_G on pure states.
inline MeasureValue q_lower_bound(const DensityMatrix& rho) {
  detail::require_two_qubits(rho);
  return MeasureValue::closed(std::max(0.0, detail::q_from_s(bloch_decompose(rho), 2.0)));
}

/// Q with coefficient 1 on Tr S, as commonly printed. Gives 1/2 on Bell
/// states; kept for comparison only. Not clipped.
inline double q_lower_bound_printed(const DensityMatrix& rho) {
  detail::require_two_qubits(rho);
  return detail::q_from_s(bloch_decompose(rho), 1.0);
}

// ---------------------------------------------------------------------------
// General geometric discord by optimization over measurement bases

struct OptimizerConfig {
  int restarts = 24;
  int max_iterations = 5000;
  double convergence_tol = 1e-9;  // simplex diameter, radians
  double initial_step = 0.5;
  std::uint64_t seed = 0x9d2c5680u;

  /// Real parameters of a rank-one projective measurement on a d-level side.
  static constexpr std::size_t parameter_count(std::size_t d) noexcept { return d * (d - 1); }
};

/// Measurement side used when none is given: the smaller subsystem, B on ties.
inline Subsystem default_measured_side(Bipartition dims) {
  return dims.dim_a < dims.dim_b ? Subsystem::A : Subsystem::B;
}

/// Tr rho^2 - Tr[Pi(rho)^2] for the complete projective measurement on
/// `side` whose projectors are the columns of `basis`.
inline double measurement_disturbance(const DensityMatrix& rho, Subsystem side,
                                      const ComplexMatrix& basis) {
  const std::size_t db = rho.dim_b();
  const std::size_t dm = rho.dim(side), dk = rho.dim(other(side));
  if (basis.rows() != dm || basis.cols() != dm) throw DimensionMismatch("measurement basis");
  const ComplexMatrix& r = rho.matrix();
  double kept = 0.0;
  std::vector<complex> sigma(dk * dk);
  for (std::size_t k = 0; k < dm; ++k) {
    std::fill(sigma.begin(), sigma.end(), complex{});
    for (std::size_t m1 = 0; m1 < dm; ++m1) {
      const complex u1 = std::conj(basis(m1, k));
      for (std::size_t m2 = 0; m2 < dm; ++m2) {
        const complex w = u1 * basis(m2, k);
        for (std::size_t i = 0; i < dk; ++i)
          for (std::size_t j = 0; j < dk; ++j) {
            const std::size_t row = side == Subsystem::B ? i * db + m1 : m1 * db + i;
            const std::size_t col = side == Subsystem::B ? j * db + m2 : m2 * db + j;
            sigma[i * dk + j] += w * r(row, col);
          }
      }
    }
    for (const auto& z : sigma) kept += std::norm(z);
  }
  return rho.purity() - kept;
}

/// Product of complex Givens rotations, one (theta, phi) pair per index pair
/// i < j, applied on the right of `base`.
inline ComplexMatrix givens_unitary(const ComplexMatrix& base, std::span<const double> params) {
  const std::size_t d = base.rows();
  if (params.size() != OptimizerConfig::parameter_count(d))
    throw DimensionMismatch("Givens parameter count");
  ComplexMatrix u = base;
  std::size_t p = 0;
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double theta = params[p++], phi = params[p++];
      const double c = std::cos(theta), s = std::sin(theta);
      const complex e = std::polar(1.0, phi);
      // columns i, j <- [u_i u_j] [[c, -e s], [conj(e) s, c]]
      for (std::size_t r = 0; r < d; ++r) {
        const complex ui = u(r, i), uj = u(r, j);
        u(r, i) = c * ui + std::conj(e) * s * uj;
        u(r, j) = -e * s * ui + c * uj;
      }
    }
  return u;
}

/// Normalized geometric discord d_m/(d_m - 1) * min over rank-one projective
/// measurements on `side` of Tr rho^2 - Tr[Pi(rho)^2], by multi-start
/// Nelder-Mead. Restart 0 starts from the computational basis, the others
/// from Haar-random bases.
inline MeasureValue geometric_discord_numeric(const DensityMatrix& rho, Subsystem side,
                                              const OptimizerConfig& cfg = {}) {
  const std::size_t dm = rho.dim(side);
  if (dm < 2) throw DimensionMismatch("measured subsystem must have dimension >= 2");
  if (cfg.restarts < 1) throw OutOfRange("restarts must be >= 1");
  if (!(cfg.convergence_tol > 0.0)) throw OutOfRange("convergence tolerance must be > 0");

  const std::size_t np = OptimizerConfig::parameter_count(dm);
  constexpr int kPolishRounds = 4;
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  bool any_converged = false;

  for (int r = 0; r < cfg.restarts; ++r) {
    ComplexMatrix base = ComplexMatrix::identity(dm);
    if (r > 0) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(r));
      base = haar_unitary(dm, rng);
    }
    auto objective = [&](const std::vector<double>& x) {
      return measurement_disturbance(rho, side, givens_unitary(base, x));
    };
    std::vector<double> x(np, 0.0);
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
    double step = cfg.initial_step;
    // Re-seed the simplex at the incumbent until it stops improving.
    for (int round = 0; round < kPolishRounds; ++round) {
      auto res = nelder_mead(objective, x, step, cfg.convergence_tol, cfg.max_iterations);
      const double improvement = value - res.value;
      x = res.x;
      value = std::min(value, res.value);
      converged = res.converged;
      if (!(improvement > 1e-15)) break;
      step = std::max(10.0 * cfg.convergence_tol, 0.1 * step);
    }
    any_converged = any_converged || converged;
    if (value < best) {
      second = best;
      best = value;
    } else if (value < second) {
      second = value;
    }
  }

  const double scale = static_cast<double>(dm) / static_cast<double>(dm - 1);
  MeasureValue out;
  out.value = clip_small_negative(scale * best);
  out.method = Method::Optimizer;
  out.residual = cfg.restarts > 1 ? scale * (second - best) : 0.0;
  out.restarts_used = cfg.restarts;
  out.converged = any_converged;
  return out;
}

inline MeasureValue geometric_discord_numeric(const DensityMatrix& rho,
                                              const OptimizerConfig& cfg = {}) {
  return geometric_discord_numeric(rho, default_measured_side(rho.dims()), cfg);
}

// ---------------------------------------------------------------------------
// Pure states from their Schmidt spectrum

namespace detail {
inline void require_spectrum_fits(const SchmidtSpectrum& alpha, std::size_t d) {
  if (d < 2) throw BadSpectrum("dimension must be >= 2");
  if (alpha.size() > d) throw BadSpectrum("spectrum longer than the dimension");
}
}  // namespace detail

/// d/(d-1) (1 - sum alpha_i^2)
inline MeasureValue geometric_discord_pure(const SchmidtSpectrum& alpha, std::size_t d) {
  detail::require_spectrum_fits(alpha, d);
  double sq = 0.0;
  for (double a : alpha.values()) sq += a * a;
  const double dd = static_cast<double>(d);
  return MeasureValue::closed(dd / (dd - 1.0) * (1.0 - sq));
}

/// [(sum sqrt alpha_i)^2 - 1] / (d - 1)
inline MeasureValue negativity_pure(const SchmidtSpectrum& alpha, std::size_t d) {
  detail::require_spectrum_fits(alpha, d);
  double s = 0.0;
  for (double a : alpha.values()) s += std::sqrt(a);
  return MeasureValue::closed((s * s - 1.0) / static_cast<double>(d - 1));
}

/// Minimal D_G of a pure d x d state at negativity n, attained by the
/// saturating Schmidt family.
inline double dg_lower_bound_curve(double n, std::size_t d) {
  if (d < 2) throw OutOfRange("dimension " + std::to_string(d));
  if (!(n >= 0.0 && n <= 1.0)) throw OutOfRange("negativity " + std::to_string(n));
  const double dd = static_cast<double>(d);
  const double dm1 = dd - 1.0;
  const double r = std::sqrt(dm1 * dm1 * (1.0 - n) * (1.0 + dm1 * n));
  const double first = 2.0 * (dd - r - 1.0) + (dd - 2.0) * dm1 * n;
  const double second = 2.0 * (dm1 * dm1 + r) - (dd - 2.0) * dm1 * n;
  return first * second / (dm1 * dm1 * dd * dd);
}

// ---------------------------------------------------------------------------
// Werner and isotropic families

struct FamilyValues {
  double d_g = 0.0;
  double negativity = 0.0;
};

/// Published closed forms: D_G = (dk+1)^2/(d+1)^2, N = max(0, k).
/// These agree with the swap-form Werner state only for d = 2; see
/// werner_direct for values evaluated on that state.
inline FamilyValues werner_closed(std::size_t d, double k) {
  if (d < 2 || !(k >= -1.0 && k <= 1.0)) throw OutOfRange("Werner parameters");
  const double dd = static_cast<double>(d);
  return {std::pow(dd * k + 1.0, 2) / std::pow(dd + 1.0, 2), std::max(0.0, k)};
}

/// D_G and negativity of werner(d, k) evaluated on the state itself:
/// the disturbance of the swap operator is basis independent, giving
/// D_G = (dk+1)^2/(d^2-1)^2, and the partial transpose has the single
/// eigenvalue -k/d below zero, giving N = max(0, 2k/(d(d-1))).
inline FamilyValues werner_direct(std::size_t d, double k) {
  if (d < 2 || !(k >= -1.0 && k <= 1.0)) throw OutOfRange("Werner parameters");
  const double dd = static_cast<double>(d);
  return {std::pow(dd * k + 1.0, 2) / std::pow(dd * dd - 1.0, 2),
          std::max(0.0, 2.0 * k / (dd * (dd - 1.0)))};
}

/// D_G = (d^2 p - 1)^2/(d^2 - 1)^2, N = max(0, (dp - 1)/(d - 1)).
inline FamilyValues isotropic_closed(std::size_t d, double p) {
  if (d < 2 || !(p >= 0.0 && p <= 1.0)) throw OutOfRange("isotropic parameters");
  const double dd = static_cast<double>(d);
  return {std::pow(dd * dd * p - 1.0, 2) / std::pow(dd * dd - 1.0, 2),
          std::max(0.0, (dd * p - 1.0) / (dd - 1.0))};
}

/// [(1 + d N)/(1 + d)]^2, the D_G(N) relation shared by both families in
/// their entangled regions.
inline double family_dg_from_negativity(double n, std::size_t d) {
  const double dd = static_cast<double>(d);
  return std::pow((1.0 + dd * n) / (1.0 + dd), 2);
}

}  // namespace qcorr
