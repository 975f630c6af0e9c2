#pragma once

// Bipartite quantum states: the validated density-matrix carrier, Schmidt
// spectra, the two-qubit Bloch (R-picture) form, named state families and
// random ensembles.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qcorr/eigen.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

inline constexpr double kTraceTolerance = 1e-10;
/// Eigenvalues in [-kPsdTolerance, 0) are treated as zero; below that the
/// matrix is rejected.
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kSpectrumTolerance = 1e-12;

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity. Throws NotAState,
  /// NonHermitian or DimensionMismatch.
  DensityMatrix(const ComplexMatrix& m, Bipartition dims) : dims_(dims) {
    require_bipartite(m, dims);
    if (dims.dim_a == 0 || dims.dim_b == 0) throw DimensionMismatch("empty subsystem");
    matrix_ = symmetrized(m);
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance)
      throw NotAState("trace " + std::to_string(tr) + " differs from 1");
    const double lowest = hermitian_eigenvalues(matrix_).min();
    if (lowest < -kPsdTolerance)
      throw NotAState("negative eigenvalue " + std::to_string(lowest));
  }
  DensityMatrix(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b)
      : DensityMatrix(m, Bipartition{dim_a, dim_b}) {}

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Bipartition dims() const noexcept { return dims_; }
  std::size_t dim_a() const noexcept { return dims_.dim_a; }
  std::size_t dim_b() const noexcept { return dims_.dim_b; }
  std::size_t dim(Subsystem s) const noexcept { return dims_.dim(s); }

  /// Tr rho^2
  double purity() const { return trace_of_product(matrix_, matrix_).real(); }

 private:
  ComplexMatrix matrix_;
  Bipartition dims_;
};

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem on = Subsystem::A) {
  return partial_transpose(rho.matrix(), rho.dims(), on);
}

inline ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  return partial_trace(rho.matrix(), rho.dims(), keep);
}

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger
inline DensityMatrix conjugate_locally(const DensityMatrix& rho, const ComplexMatrix& u_a,
                                       const ComplexMatrix& u_b) {
  if (u_a.rows() != rho.dim_a() || u_b.rows() != rho.dim_b())
    throw DimensionMismatch("local unitary dimensions");
  const ComplexMatrix u = kron(u_a, u_b);
  return DensityMatrix(u * rho.matrix() * u.adjoint(), rho.dims());
}

/// Exchanges the roles of A and B.
inline DensityMatrix swap_subsystems(const DensityMatrix& rho) {
  const std::size_t da = rho.dim_a(), db = rho.dim_b();
  ComplexMatrix out(da * db, da * db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2)
          out(b * da + a, b2 * da + a2) = rho.matrix()(a * db + b, a2 * db + b2);
  return DensityMatrix(out, Bipartition{db, da});
}

// ---------------------------------------------------------------------------

/// Squared Schmidt coefficients of a pure bipartite state, decreasing.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw BadSpectrum("empty spectrum");
    double total = 0.0;
    for (double a : alpha_) {
      if (!(a >= 0.0)) throw BadSpectrum("negative or NaN coefficient " + std::to_string(a));
      total += a;
    }
    if (std::abs(total - 1.0) > kSpectrumTolerance)
      throw BadSpectrum("coefficients sum to " + std::to_string(total));
    std::stable_sort(alpha_.begin(), alpha_.end(), std::greater<>());
  }

  std::span<const double> values() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return alpha_.size(); }
  double operator[](std::size_t i) const { return alpha_[i]; }

 private:
  std::vector<double> alpha_;
};

/// sum_j sqrt(alpha_j) |j>|j> in the computational basis.
inline DensityMatrix from_schmidt(const SchmidtSpectrum& alpha, std::size_t dim_a,
                                  std::size_t dim_b) {
  if (alpha.size() > std::min(dim_a, dim_b))
    throw BadSpectrum("spectrum longer than the smaller subsystem");
  std::vector<complex> psi(dim_a * dim_b);
  for (std::size_t j = 0; j < alpha.size(); ++j) psi[j * dim_b + j] = std::sqrt(alpha[j]);
  return DensityMatrix(ComplexMatrix::outer(psi), Bipartition{dim_a, dim_b});
}

inline double schmidt_alpha_from_negativity(double n) {
  return 0.5 * (1.0 + std::sqrt(1.0 - n * n));
}

/// Two-qubit pure state in Schmidt form whose negativity is `n`.
inline DensityMatrix pure_2q_from_negativity(double n) {
  if (!(n >= 0.0 && n <= 1.0)) throw OutOfRange("negativity " + std::to_string(n));
  const double root = std::sqrt(1.0 - n * n);
  ComplexMatrix m(4, 4);
  m(0, 0) = 0.5 * (1.0 + root);
  m(3, 3) = 0.5 * (1.0 - root);
  m(0, 3) = m(3, 0) = 0.5 * n;
  return DensityMatrix(m, Bipartition{2, 2});
}

/// Reduced spectrum of a pure state. Throws NotPure when Tr rho^2 < 1 - purity_tol.
inline SchmidtSpectrum schmidt_spectrum(const DensityMatrix& rho, double purity_tol = 1e-10) {
  const double purity = rho.purity();
  if (purity < 1.0 - purity_tol) throw NotPure("purity " + std::to_string(purity));
  auto values = hermitian_eigenvalues(partial_trace(rho, Subsystem::A)).values;
  for (auto& v : values) v = std::max(v, 0.0);
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  for (auto& v : values) v /= total;
  return SchmidtSpectrum(std::move(values));
}

// ---------------------------------------------------------------------------
// Two-qubit R-picture: rho = 1/4 sum_ij R_ij sigma_i (x) sigma_j.

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

struct BlochForm {
  Vec3 x{};  // Bloch vector of A
  Vec3 y{};  // Bloch vector of B
  Mat3 t{};  // correlation matrix, t[i][j] = Tr[rho sigma_i (x) sigma_j]
};

inline BlochForm bloch_decompose(const DensityMatrix& rho) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) throw DimensionMismatch("Bloch form needs 2x2");
  std::array<ComplexMatrix, 4> s;
  for (int i = 0; i < 4; ++i) s[i] = pauli::matrix(i);
  auto r = [&](int i, int j) {
    return trace_of_product(rho.matrix(), kron(s[i], s[j])).real();
  };
  BlochForm b;
  for (int i = 0; i < 3; ++i) {
    b.x[i] = r(i + 1, 0);
    b.y[i] = r(0, i + 1);
    for (int j = 0; j < 3; ++j) b.t[i][j] = r(i + 1, j + 1);
  }
  return b;
}

/// Inverse of bloch_decompose. Throws NotAState for unphysical (x, y, T).
inline DensityMatrix bloch_compose(const BlochForm& b) {
  std::array<ComplexMatrix, 4> s;
  for (int i = 0; i < 4; ++i) s[i] = pauli::matrix(i);
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (int i = 0; i < 3; ++i) {
    m += kron(s[i + 1], s[0]) * complex(b.x[i]);
    m += kron(s[0], s[i + 1]) * complex(b.y[i]);
    for (int j = 0; j < 3; ++j) m += kron(s[i + 1], s[j + 1]) * complex(b.t[i][j]);
  }
  return DensityMatrix(m * complex(0.25), Bipartition{2, 2});
}

// ---------------------------------------------------------------------------
// Families.

/// Werner state [(d+k) I - (dk+1) F] / (d^3 - d), F the swap operator, so
/// that Tr(rho F) = -k. Entangled for 0 < k <= 1.
inline DensityMatrix werner(std::size_t d, double k) {
  if (d < 2) throw OutOfRange("Werner dimension " + std::to_string(d));
  if (!(k >= -1.0 && k <= 1.0)) throw OutOfRange("Werner parameter " + std::to_string(k));
  const double dd = static_cast<double>(d);
  const double norm = dd * dd * dd - dd;
  ComplexMatrix m = ComplexMatrix::identity(d * d) * complex((dd + k) / norm);
  m -= swap_operator(d) * complex((dd * k + 1.0) / norm);
  return DensityMatrix(m, Bipartition{d, d});
}

/// d^{-1/2} sum_i |ii>
inline std::vector<complex> maximally_entangled_vector(std::size_t d) {
  std::vector<complex> psi(d * d);
  for (std::size_t i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  return psi;
}

/// Isotropic state with fidelity p to the maximally entangled vector.
inline DensityMatrix isotropic(std::size_t d, double p) {
  if (d < 2) throw OutOfRange("isotropic dimension " + std::to_string(d));
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("isotropic parameter " + std::to_string(p));
  const double d2 = static_cast<double>(d * d);
  ComplexMatrix m = ComplexMatrix::identity(d * d) * complex((1.0 - p) / (d2 - 1.0));
  m += ComplexMatrix::outer(maximally_entangled_vector(d)) * complex((d2 * p - 1.0) / (d2 - 1.0));
  return DensityMatrix(m, Bipartition{d, d});
}

/// Left-hand side of the admissibility condition of the rank-two X family.
inline double x_boundary_region(double a, double c) {
  return -1.0 + 6.0 * a - 7.0 * a * a + 6.0 * c - 18.0 * a * c - 7.0 * c * c +
         4.0 * std::numbers::sqrt2 * std::sqrt(a * c) * std::abs(2.0 * a + 2.0 * c - 1.0);
}

inline constexpr double kRegionTolerance = 1e-12;

/// Diagonal (a, b, c, d) of the rank-two X state at (a, c), or throws
/// OutsideRegion.
inline std::array<double, 4> x_boundary_diagonal(double a, double c) {
  if (!(a >= 0.0 && a <= 0.5 && c >= 0.0 && c <= 0.5))
    throw OutsideRegion("a, c must lie in [0, 1/2]");
  const double g = x_boundary_region(a, c);
  if (g < -kRegionTolerance) throw OutsideRegion("constraint value " + std::to_string(g));
  const double b = (2.0 - 2.0 * a - 2.0 * c + 2.0 * std::sqrt(std::max(g, 0.0))) / 4.0;
  double d = 1.0 - a - b - c;
  if (d < -kPsdTolerance) throw NotAState("d = " + std::to_string(d));
  d = std::max(d, 0.0);
  return {a, b, c, d};
}

/// Rank-two X-shaped state [[a,0,0,sqrt(ad)],[0,b,sqrt(bc),0],...].
inline DensityMatrix x_boundary_state(double a, double c) {
  const auto [aa, b, cc, d] = x_boundary_diagonal(a, c);
  ComplexMatrix m(4, 4);
  m(0, 0) = aa;
  m(1, 1) = b;
  m(2, 2) = cc;
  m(3, 3) = d;
  m(0, 3) = m(3, 0) = std::sqrt(aa * d);
  m(1, 2) = m(2, 1) = std::sqrt(b * cc);
  return DensityMatrix(m, Bipartition{2, 2});
}

/// Separable two-qubit state of maximal geometric discord (1/4).
inline DensityMatrix sep_opt_state() {
  const double hi = (2.0 + std::numbers::sqrt2) / 8.0;
  const double lo = (2.0 - std::numbers::sqrt2) / 8.0;
  const double off = 1.0 / (4.0 * std::numbers::sqrt2);
  ComplexMatrix m(4, 4);
  m(0, 0) = hi;
  m(1, 1) = lo;
  m(2, 2) = hi;
  m(3, 3) = lo;
  m(0, 3) = m(3, 0) = off;
  m(1, 2) = m(2, 1) = off;
  return DensityMatrix(m, Bipartition{2, 2});
}

/// p * sep_opt_state + (1 - p) * I/4
inline DensityMatrix sep_mixture(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("mixing parameter " + std::to_string(p));
  ComplexMatrix m = sep_opt_state().matrix() * complex(p);
  m += ComplexMatrix::identity(4) * complex((1.0 - p) / 4.0);
  return DensityMatrix(m, Bipartition{2, 2});
}

/// Smallest admissible angle of the saturating family: arccos sqrt((d-1)/d).
inline double saturating_theta_min(std::size_t d) {
  const double dd = static_cast<double>(d);
  return std::acos(std::sqrt((dd - 1.0) / dd));
}

/// alpha_0 = sin^2 theta, alpha_i = cos^2 theta / (d - 1).
inline SchmidtSpectrum saturating_schmidt(std::size_t d, double theta) {
  if (d < 2) throw OutOfRange("dimension " + std::to_string(d));
  constexpr double slack = 1e-12;
  if (!(theta >= saturating_theta_min(d) - slack && theta <= std::numbers::pi / 2 + slack))
    throw OutOfRange("angle " + std::to_string(theta));
  const double s = std::sin(theta), c = std::cos(theta);
  std::vector<double> alpha(d, c * c / static_cast<double>(d - 1));
  alpha[0] = s * s;
  // Absorb rounding so the probability vector sums to 1.
  const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  for (auto& a : alpha) a /= total;
  return SchmidtSpectrum(std::move(alpha));
}

// ---------------------------------------------------------------------------
// Random ensembles.

inline complex complex_normal(Rng& rng) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {re, im};
}

/// Haar-random unitary via Gram-Schmidt on a complex Ginibre matrix.
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix u(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) u(r, c) = complex_normal(rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      complex overlap = 0.0;
      for (std::size_t r = 0; r < n; ++r) overlap += std::conj(u(r, prev)) * u(r, c);
      for (std::size_t r = 0; r < n; ++r) u(r, c) -= overlap * u(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(u(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) u(r, c) /= norm;
  }
  return u;
}

/// Haar-random pure state.
inline DensityMatrix random_pure(std::size_t dim_a, std::size_t dim_b, Rng& rng) {
  std::vector<complex> psi(dim_a * dim_b);
  double norm = 0.0;
  for (auto& z : psi) {
    z = complex_normal(rng);
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  for (auto& z : psi) z /= norm;
  return DensityMatrix(ComplexMatrix::outer(psi), Bipartition{dim_a, dim_b});
}

/// G G^dagger / Tr(G G^dagger) for a (dim_a dim_b) x rank complex Gaussian G.
/// rank == dim_a * dim_b gives the Hilbert-Schmidt measure.
inline DensityMatrix random_mixed(std::size_t dim_a, std::size_t dim_b, std::size_t rank,
                                  Rng& rng) {
  const std::size_t n = dim_a * dim_b;
  if (rank == 0 || rank > n)
    throw BadRank("rank " + std::to_string(rank) + " for dimension " + std::to_string(n));
  ComplexMatrix g(n, rank);
  for (auto& z : g.entries()) z = complex_normal(rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= complex(1.0 / rho.trace().real());
  return DensityMatrix(rho, Bipartition{dim_a, dim_b});
}

inline DensityMatrix random_mixed(std::size_t dim_a, std::size_t dim_b, Rng& rng) {
  return random_mixed(dim_a, dim_b, dim_a * dim_b, rng);
}

/// Flat Dirichlet point on the simplex.
inline SchmidtSpectrum random_schmidt(std::size_t d, Rng& rng) {
  if (d == 0) throw OutOfRange("dimension 0");
  std::vector<double> e(d);
  double total = 0.0;
  for (auto& x : e) {
    x = -std::log(rng.uniform_open_zero());
    total += x;
  }
  for (auto& x : e) x /= total;
  return SchmidtSpectrum(std::move(e));
}

}  // namespace qcorr
