#pragma once

// Cyclic Jacobi diagonalization of complex Hermitian matrices.
//
// Each rotation first removes the phase of the pivot a_pq with
// diag(1, e^{-i phi}) and then applies the real symmetric Jacobi rotation,
// so the combined 2x2 unitary is G = diag(1, e^{-i phi}) * [[c, s], [-s, c]].

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// Eigenvalues sorted in decreasing order.
struct HermitianSpectrum {
  std::vector<double> values;

  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
  double max() const { return values.front(); }
  double min() const { return values.back(); }
  std::size_t size() const noexcept { return values.size(); }
};

/// Decreasing eigenvalues and matching unit eigenvectors (columns of `vectors`).
struct HermitianEigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

namespace detail {

inline constexpr double kJacobiRelativeTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Diagonalizes `a` in place; accumulates rotations into `v` when non-null.
inline void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.rows();
  const double threshold = kJacobiRelativeTolerance * hs_norm(a);
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const complex phase = a(p, q) / r;  // e^{i phi}
        const complex phase_conj = std::conj(phase);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const complex g_pp = c, g_pq = s;
        const complex g_qp = -s * phase_conj, g_qq = c * phase_conj;

        // A <- A G (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        // A <- G^dagger A (rows p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (v != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            const complex vkp = (*v)(k, p), vkq = (*v)(k, q);
            (*v)(k, p) = vkp * g_pp + vkq * g_qp;
            (*v)(k, q) = vkp * g_pq + vkq * g_qq;
          }
        }
      }
    }
  }
}

inline std::vector<std::size_t> decreasing_order(const ComplexMatrix& diag) {
  std::vector<std::size_t> idx(diag.rows());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return diag(i, i).real() > diag(j, j).real();
  });
  return idx;
}

}  // namespace detail

/// Full eigendecomposition. Throws NonSquare / NonHermitian.
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  ComplexMatrix a = symmetrized(m);
  ComplexMatrix v = ComplexMatrix::identity(a.rows());
  detail::jacobi_diagonalize(a, &v);
  const auto order = detail::decreasing_order(a);
  HermitianEigensystem out{std::vector<double>(a.rows()), ComplexMatrix(a.rows(), a.rows())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < a.rows(); ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline HermitianSpectrum hermitian_eigenvalues(const ComplexMatrix& m) {
  ComplexMatrix a = symmetrized(m);
  detail::jacobi_diagonalize(a, nullptr);
  const auto order = detail::decreasing_order(a);
  HermitianSpectrum out;
  out.values.reserve(order.size());
  for (auto i : order) out.values.push_back(a(i, i).real());
  return out;
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double x : hermitian_eigenvalues(m).values) s += std::abs(x);
  return s;
}

}  // namespace qcorr
