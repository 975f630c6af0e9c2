#pragma once

// Dense complex matrices for small bipartite systems (at most a few dozen
// rows). Storage is row-major; all operations return new values.

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qcorr/errors.hpp"

namespace qcorr {

using complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionMismatch("entry count " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    }
  }
  /// Row-wise literal, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// |v><v|
  static ComplexMatrix outer(std::span<const complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const complex> entries() const noexcept { return data_; }
  std::span<complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }
  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  complex trace() const {
    if (!is_square()) throw NonSquare("trace of a rectangular matrix");
    complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend std::vector<complex> operator*(const ComplexMatrix& a, std::span<const complex> v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shape");
    std::vector<complex> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("elementwise shape");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

/// Largest entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_diff");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// Hilbert-Schmidt (Frobenius) norm sqrt(Tr M M^dagger).
inline double hs_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) s += std::norm(x);
  return std::sqrt(s);
}

/// Tr(A B) for square A, B of equal size, without forming the product.
inline complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionMismatch("trace_of_product");
  complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

inline constexpr double kHermitianTolerance = 1e-10;

/// Largest entrywise deviation |M - M^dagger|.
inline double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw NonSquare("hermiticity of a rectangular matrix");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

/// Checks Hermiticity within `tol` and returns (M + M^dagger)/2.
inline ComplexMatrix symmetrized(const ComplexMatrix& m, double tol = kHermitianTolerance) {
  if (!m.is_square()) throw NonSquare(std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const double defect = hermiticity_defect(m);
  if (defect > tol) throw NonHermitian("entrywise defect " + std::to_string(defect));
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

namespace pauli {
inline ComplexMatrix matrix(int i) {
  switch (i) {
    case 0: return {{1.0, 0.0}, {0.0, 1.0}};
    case 1: return {{0.0, 1.0}, {1.0, 0.0}};
    case 2: return {{0.0, complex{0, -1}}, {complex{0, 1}, 0.0}};
    case 3: return {{1.0, 0.0}, {0.0, -1.0}};
    default: throw OutOfRange("Pauli index " + std::to_string(i));
  }
}
}  // namespace pauli

// ---------------------------------------------------------------------------
// Bipartite index bookkeeping. A composite index is (a, b) -> a * dim_b + b.

enum class Subsystem { A, B };

inline constexpr Subsystem other(Subsystem s) noexcept {
  return s == Subsystem::A ? Subsystem::B : Subsystem::A;
}

struct Bipartition {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;

  std::size_t total() const noexcept { return dim_a * dim_b; }
  std::size_t dim(Subsystem s) const noexcept { return s == Subsystem::A ? dim_a : dim_b; }
  bool operator==(const Bipartition&) const = default;
};

inline void require_bipartite(const ComplexMatrix& m, Bipartition dims) {
  if (!m.is_square() || m.rows() != dims.total()) {
    throw DimensionMismatch(std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            " is not a " + std::to_string(dims.dim_a) + "x" +
                            std::to_string(dims.dim_b) + " bipartite operator");
  }
}

/// Transposes the chosen tensor factor in the computational basis.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, Bipartition dims, Subsystem on) {
  require_bipartite(m, dims);
  const std::size_t da = dims.dim_a, db = dims.dim_b;
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2) {
          const complex v = m(a * db + b, a2 * db + b2);
          if (on == Subsystem::A)
            out(a2 * db + b, a * db + b2) = v;
          else
            out(a * db + b2, a2 * db + b) = v;
        }
  return out;
}

/// Reduced operator on the kept subsystem.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, Bipartition dims, Subsystem keep) {
  require_bipartite(m, dims);
  const std::size_t da = dims.dim_a, db = dims.dim_b;
  if (keep == Subsystem::A) {
    ComplexMatrix out(da, da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b = 0; b < db; ++b) out(a, a2) += m(a * db + b, a2 * db + b);
    return out;
  }
  ComplexMatrix out(db, db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t b2 = 0; b2 < db; ++b2)
      for (std::size_t a = 0; a < da; ++a) out(b, b2) += m(a * db + b, a * db + b2);
  return out;
}

/// Swap operator F|ij> = |ji> on C^d (x) C^d.
inline ComplexMatrix swap_operator(std::size_t d) {
  ComplexMatrix f(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

}  // namespace qcorr
