#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

ComplexMatrix bell_phi_plus() {
  const double h = 1.0 / std::numbers::sqrt2;
  const std::vector<complex> psi = {h, 0, 0, h};
  return ComplexMatrix::outer(psi);
}

void expect_valid_state(const DensityMatrix& rho) {
  EXPECT_LT(hermiticity_defect(rho.matrix()), 1e-10);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
  EXPECT_GE(hermitian_eigenvalues(rho.matrix()).min(), -1e-9);
}

double expect_swap_value(const DensityMatrix& rho) {
  return trace_of_product(rho.matrix(), swap_operator(rho.dim_a())).real();
}

}  // namespace

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(4), 2, 2), NotAState);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(4) * complex(0.25), 2, 3), DimensionMismatch);
  EXPECT_THROW(DensityMatrix((ComplexMatrix{{1.5, 0}, {0, -0.5}}), 1, 2), NotAState);
  EXPECT_THROW(DensityMatrix((ComplexMatrix{{0.5, 1}, {0, 0.5}}), 1, 2), NonHermitian);
  // Tiny negative eigenvalue is tolerated.
  EXPECT_NO_THROW(DensityMatrix((ComplexMatrix{{1.0 + 5e-10, 0}, {0, -5e-10}}), 1, 2));
  EXPECT_THROW(DensityMatrix((ComplexMatrix{{1.0 + 2e-9, 0}, {0, -2e-9}}), 1, 2), NotAState);
}

TEST(SchmidtSpectrum, Validation) {
  EXPECT_THROW(SchmidtSpectrum({0.5, 0.6}), BadSpectrum);
  EXPECT_THROW(SchmidtSpectrum({1.2, -0.2}), BadSpectrum);
  EXPECT_THROW(SchmidtSpectrum(std::vector<double>{}), BadSpectrum);
  const SchmidtSpectrum s({0.2, 0.5, 0.3});
  EXPECT_EQ(s[0], 0.5);
  EXPECT_EQ(s[2], 0.2);
}

TEST(FromSchmidt, ProductState) {
  const auto rho = from_schmidt(SchmidtSpectrum({1.0}), 2, 2);
  ComplexMatrix want(4, 4);
  want(0, 0) = 1.0;
  EXPECT_EQ(rho.matrix(), want);
}

TEST(FromSchmidt, HalfHalfIsBell) {
  const auto rho = from_schmidt(SchmidtSpectrum({0.5, 0.5}), 2, 2);
  EXPECT_LT(max_abs_diff(rho.matrix(), bell_phi_plus()), 1e-15);
  EXPECT_LT(max_abs_diff(rho.matrix(), pure_2q_from_negativity(1.0).matrix()), 1e-15);
}

TEST(FromSchmidt, UniformQutritsHaveMaximallyMixedMarginals) {
  const double t = 1.0 / 3.0;
  const auto rho = from_schmidt(SchmidtSpectrum({t, t, 1.0 - 2 * t}), 3, 3);
  EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::A), ComplexMatrix::identity(3) * complex(t)), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::B), ComplexMatrix::identity(3) * complex(t)), 1e-15);
}

TEST(FromSchmidt, MarginalIsDiagonalSpectrumAndPurityOne) {
  const SchmidtSpectrum alpha({0.6, 0.3, 0.1});
  const auto rho = from_schmidt(alpha, 3, 4);
  const std::vector<double> diag(alpha.values().begin(), alpha.values().end());
  EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::A), ComplexMatrix::diagonal(diag)), 1e-15);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  EXPECT_THROW(from_schmidt(alpha, 2, 4), BadSpectrum);
}

TEST(Pure2qFromNegativity, Examples) {
  ComplexMatrix prod(4, 4);
  prod(0, 0) = 1.0;
  EXPECT_LT(max_abs_diff(pure_2q_from_negativity(0.0).matrix(), prod), 1e-15);
  EXPECT_LT(max_abs_diff(pure_2q_from_negativity(1.0).matrix(), bell_phi_plus()), 1e-15);
  const auto s = schmidt_spectrum(pure_2q_from_negativity(0.6));
  EXPECT_NEAR(s[0], 0.9, 1e-12);
  EXPECT_NEAR(s[1], 0.1, 1e-12);
  EXPECT_THROW(pure_2q_from_negativity(1.1), OutOfRange);
  EXPECT_THROW(pure_2q_from_negativity(-0.1), OutOfRange);
}

TEST(BlochDecompose, MaximallyMixed) {
  const auto b = bloch_decompose(DensityMatrix(ComplexMatrix::identity(4) * complex(0.25), 2, 2));
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(b.x[i], 0.0, 1e-15);
    EXPECT_NEAR(b.y[i], 0.0, 1e-15);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(b.t[i][j], 0.0, 1e-15);
  }
}

TEST(BlochDecompose, Bell) {
  const auto b = bloch_decompose(DensityMatrix(bell_phi_plus(), 2, 2));
  const double diag[3] = {1, -1, 1};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(b.x[i], 0.0, 1e-15);
    EXPECT_NEAR(b.y[i], 0.0, 1e-15);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(b.t[i][j], i == j ? diag[i] : 0.0, 1e-15);
  }
}

TEST(BlochDecompose, PureSchmidtFamily) {
  for (double n : {0.0, 0.2, 0.6, 0.95, 1.0}) {
    const auto b = bloch_decompose(pure_2q_from_negativity(n));
    const double alpha = (1.0 + std::sqrt(1.0 - n * n)) / 2.0;
    EXPECT_NEAR(b.y[0], 0.0, 1e-15);
    EXPECT_NEAR(b.y[1], 0.0, 1e-15);
    EXPECT_NEAR(b.y[2], 2 * alpha - 1, 1e-14);
    EXPECT_NEAR(b.t[0][0], n, 1e-14);
    EXPECT_NEAR(b.t[1][1], -n, 1e-14);
    EXPECT_NEAR(b.t[2][2], 1.0, 1e-14);
  }
}

TEST(BlochDecompose, RejectsNonQubits) {
  EXPECT_THROW(bloch_decompose(DensityMatrix(ComplexMatrix::identity(6) * complex(1.0 / 6), 2, 3)),
               DimensionMismatch);
}

TEST(BlochCompose, Examples) {
  EXPECT_LT(max_abs_diff(bloch_compose({}).matrix(), ComplexMatrix::identity(4) * complex(0.25)), 1e-15);
  BlochForm bell;
  bell.t = {{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  EXPECT_LT(max_abs_diff(bloch_compose(bell).matrix(), bell_phi_plus()), 1e-15);
  BlochForm bad;
  bad.t = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  EXPECT_THROW(bloch_compose(bad), NotAState);
}

TEST(BlochCompose, RoundTripOnRandomStates) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng = Rng::stream(4, i);
    const auto rho = i % 3 ? random_mixed(2, 2, 1 + i % 4, rng) : random_pure(2, 2, rng);
    const auto b = bloch_decompose(rho);
    const auto back = bloch_compose(b);
    EXPECT_LT(max_abs_diff(back.matrix(), rho.matrix()), 1e-12);
    const auto b2 = bloch_decompose(back);
    double nx = 0, ny = 0;
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(b2.x[k], b.x[k], 1e-12);
      EXPECT_NEAR(b2.y[k], b.y[k], 1e-12);
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(b2.t[k][j], b.t[k][j], 1e-12);
      nx += b.x[k] * b.x[k];
      ny += b.y[k] * b.y[k];
    }
    EXPECT_LE(std::sqrt(nx), 1.0 + 1e-10);
    EXPECT_LE(std::sqrt(ny), 1.0 + 1e-10);
  }
}

TEST(SchmidtSpectrumOf, Examples) {
  const auto bell = schmidt_spectrum(DensityMatrix(bell_phi_plus(), 2, 2));
  EXPECT_NEAR(bell[0], 0.5, 1e-14);
  EXPECT_NEAR(bell[1], 0.5, 1e-14);
  const auto prod = schmidt_spectrum(pure_2q_from_negativity(0.0));
  EXPECT_NEAR(prod[0], 1.0, 1e-15);
  EXPECT_NEAR(prod[1], 0.0, 1e-15);
  EXPECT_THROW(schmidt_spectrum(DensityMatrix(ComplexMatrix::identity(4) * complex(0.25), 2, 2)), NotPure);
}

TEST(SchmidtSpectrumOf, MatchesOtherMarginalForRandomPureQutrits) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng::stream(12, i);
    const auto rho = random_pure(3, 3, rng);
    const auto s = schmidt_spectrum(rho);
    const auto other = hermitian_eigenvalues(partial_trace(rho, Subsystem::B)).values;
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(s[k], other[k], 1e-10);
  }
}

TEST(Werner, SingletAtKOne) {
  const auto rho = werner(2, 1.0);
  const auto want = (ComplexMatrix::identity(4) - swap_operator(2)) * complex(0.5);
  EXPECT_LT(max_abs_diff(rho.matrix(), want), 1e-15);
}

TEST(Werner, TripletMixtureAtKMinusOne) {
  const auto rho = werner(2, -1.0);
  const auto want = (ComplexMatrix::identity(4) + swap_operator(2)) * complex(1.0 / 6.0);
  EXPECT_LT(max_abs_diff(rho.matrix(), want), 1e-15);
  expect_valid_state(rho);
}

TEST(Werner, MaximallyMixedAtMinusOneOverD) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const double dd = static_cast<double>(d);
    const auto rho = werner(d, -1.0 / dd);
    EXPECT_LT(max_abs_diff(rho.matrix(), ComplexMatrix::identity(d * d) * complex(1.0 / (dd * dd))), 1e-15);
    EXPECT_NEAR(expect_swap_value(rho), 1.0 / dd, 1e-12);
  }
}

TEST(Werner, SwapExpectationIsMinusK) {
  for (std::size_t d : {2u, 3u, 5u})
    for (double k = -1.0; k <= 1.0 + 1e-12; k += 0.125) {
      const auto rho = werner(d, std::min(k, 1.0));
      expect_valid_state(rho);
      EXPECT_NEAR(expect_swap_value(rho), -std::min(k, 1.0), 1e-12);
    }
  EXPECT_THROW(werner(1, 0.0), OutOfRange);
  EXPECT_THROW(werner(3, 1.5), OutOfRange);
}

TEST(Isotropic, Examples) {
  const auto psi = maximally_entangled_vector(3);
  EXPECT_LT(max_abs_diff(isotropic(3, 1.0).matrix(), ComplexMatrix::outer(psi)), 1e-15);
  EXPECT_LT(max_abs_diff(isotropic(3, 1.0 / 9.0).matrix(), ComplexMatrix::identity(9) * complex(1.0 / 9.0)), 1e-15);
  for (double p : {0.0, 0.3, 0.8}) {
    const auto rho = isotropic(4, p);
    expect_valid_state(rho);
    const auto v = rho.matrix() * std::span<const complex>(maximally_entangled_vector(4));
    complex f = 0;
    const auto phi = maximally_entangled_vector(4);
    for (std::size_t i = 0; i < v.size(); ++i) f += std::conj(phi[i]) * v[i];
    EXPECT_NEAR(f.real(), p, 1e-12);
  }
  EXPECT_THROW(isotropic(3, -0.1), OutOfRange);
  EXPECT_THROW(isotropic(1, 0.5), OutOfRange);
}

TEST(Isotropic, QubitCaseMatchesWernerUpToLocalUnitary) {
  for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.05) {
    const double pp = std::min(p, 1.0);
    const auto iso = isotropic(2, pp);
    const auto w = werner(2, 2 * pp - 1);
    EXPECT_NEAR(geometric_discord_2q(iso).value, geometric_discord_2q(w).value, 1e-10);
    EXPECT_NEAR(negativity(iso).value, negativity(w).value, 1e-10);
    // i sigma_y on A maps |Phi+> to the singlet
    const auto rotated = conjugate_locally(iso, pauli::matrix(2), ComplexMatrix::identity(2));
    EXPECT_LT(max_abs_diff(rotated.matrix(), w.matrix()), 1e-14);
  }
}

TEST(XBoundary, SeparableOptimumPoint) {
  const double a = (2.0 + std::numbers::sqrt2) / 8.0;
  EXPECT_NEAR(x_boundary_region(a, a), 0.0, 1e-12);
  const auto rho = x_boundary_state(a, a);
  EXPECT_LT(max_abs_diff(rho.matrix(), sep_opt_state().matrix()), 1e-12);
  EXPECT_NEAR(negativity(rho).value, 0.0, 1e-12);
}

TEST(XBoundary, OutsideRegion) {
  EXPECT_THROW(x_boundary_state(0.6, 0.1), OutsideRegion);
  EXPECT_THROW(x_boundary_state(-0.1, 0.1), OutsideRegion);
  EXPECT_THROW(x_boundary_state(0.05, 0.05), OutsideRegion);
}

TEST(XBoundary, RankTwoAndSeparabilityEdge) {
  std::size_t admissible = 0;
  for (int i = 0; i <= 50; ++i)
    for (int j = 0; j <= 50; ++j) {
      const double a = 0.01 * i, c = 0.01 * j;
      if (x_boundary_region(a, c) < 0.0) continue;
      const auto rho = x_boundary_state(a, c);
      ++admissible;
      expect_valid_state(rho);
      const auto ev = hermitian_eigenvalues(rho.matrix()).values;
      std::size_t rank = 0;
      for (double v : ev) rank += v >= 1e-8;
      EXPECT_LE(rank, 2u) << "a=" << a << " c=" << c;
    }
  EXPECT_GT(admissible, 100u);
  // Bisect ad = bc along a = 0.3; the partial transpose then has a zero eigenvalue.
  const double a = 0.3;
  auto edge = [&](double c) {
    const auto dg = x_boundary_diagonal(a, c);
    return dg[0] * dg[3] - dg[1] * dg[2];
  };
  double lo = -1, hi = -1, prev_c = -1, prev_e = 0;
  for (int j = 0; j <= 500; ++j) {
    const double c = 0.001 * j;
    if (x_boundary_region(a, c) < 0.0) continue;
    const double e = edge(c);
    if (prev_c >= 0 && (e > 0) != (prev_e > 0)) {
      lo = prev_c;
      hi = c;
      break;
    }
    prev_c = c;
    prev_e = e;
  }
  ASSERT_GE(lo, 0.0);
  const bool lo_pos = edge(lo) > 0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((edge(mid) > 0) == lo_pos ? lo : hi) = mid;
  }
  const auto pt = hermitian_eigenvalues(partial_transpose(x_boundary_state(a, lo))).values;
  EXPECT_NEAR(pt.back(), 0.0, 1e-9);
}

TEST(SepOpt, MarginalsAndNegativity) {
  const auto rho = sep_opt_state();
  EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::A), ComplexMatrix::identity(2) * complex(0.5)), 1e-15);
  const auto rb = partial_trace(rho, Subsystem::B);
  EXPECT_NEAR(trace_of_product(rb, rb).real(), 0.75, 1e-15);
  EXPECT_GE(hermitian_eigenvalues(partial_transpose(rho)).min(), -1e-12);
}

TEST(SepMixture, Endpoints) {
  EXPECT_LT(max_abs_diff(sep_mixture(0.0).matrix(), ComplexMatrix::identity(4) * complex(0.25)), 1e-15);
  EXPECT_LT(max_abs_diff(sep_mixture(1.0).matrix(), sep_opt_state().matrix()), 1e-15);
  EXPECT_THROW(sep_mixture(1.01), OutOfRange);
}

TEST(SaturatingSchmidt, Examples) {
  for (std::size_t d = 2; d <= 7; ++d) {
    const auto top = saturating_schmidt(d, std::numbers::pi / 2);
    EXPECT_NEAR(top[0], 1.0, 1e-15);
    for (std::size_t i = 1; i < d; ++i) EXPECT_NEAR(top[i], 0.0, 1e-15);
    const auto uni = saturating_schmidt(d, saturating_theta_min(d));
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(uni[i], 1.0 / static_cast<double>(d), 1e-14);
  }
  for (double theta : {0.9, 1.1, 1.4}) {
    const auto s = saturating_schmidt(2, theta);
    EXPECT_NEAR(s[0], std::pow(std::sin(theta), 2), 1e-15);
    EXPECT_NEAR(s[1], std::pow(std::cos(theta), 2), 1e-15);
  }
  EXPECT_THROW(saturating_schmidt(3, 0.1), OutOfRange);
  EXPECT_THROW(saturating_schmidt(3, 2.0), OutOfRange);
}

TEST(RandomEnsembles, MixedStatesAreValid) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng::stream(21, i);
    expect_valid_state(random_mixed(2, 2, rng));
    expect_valid_state(random_mixed(2, 3, 1 + i % 6, rng));
  }
  Rng rng(1);
  EXPECT_THROW(random_mixed(2, 2, 0, rng), BadRank);
  EXPECT_THROW(random_mixed(2, 2, 5, rng), BadRank);
}

TEST(RandomEnsembles, RankIsRespected) {
  Rng rng(2);
  const auto ev = hermitian_eigenvalues(random_mixed(2, 3, 2, rng).matrix()).values;
  EXPECT_GT(ev[1], 1e-6);
  EXPECT_LT(std::abs(ev[2]), 1e-12);
}

TEST(RandomEnsembles, SchmidtIsSortedProbability) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = Rng::stream(9, i);
    const auto s = random_schmidt(3, rng);
    double total = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      total += s[k];
      if (k) {
        EXPECT_GE(s[k - 1], s[k]);
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(RandomEnsembles, HaarUnitaryIsUnitary) {
  Rng rng(5);
  for (std::size_t n : {2u, 3u, 6u}) {
    const auto u = haar_unitary(n, rng);
    EXPECT_LT(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(n)), 1e-13);
  }
}

// Haar-random pure 2x2 states have E[Tr rho_A^2] = (m + n)/(mn + 1) = 4/5.
// Checked with the library RNG and with an independent std::mt19937 sampler.
TEST(RandomEnsembles, HaarPureMarginalPurityMoment) {
  const int samples = 10000;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(2718, static_cast<std::uint64_t>(i));
    const auto ra = partial_trace(random_pure(2, 2, rng), Subsystem::A);
    sum += trace_of_product(ra, ra).real();
  }
  const double library_mean = sum / samples;
  EXPECT_NEAR(library_mean, 0.8, 0.01);

  std::mt19937 gen(314159);
  std::normal_distribution<double> g;
  double mc = 0.0;
  for (int i = 0; i < samples; ++i) {
    complex psi[4];
    double norm = 0.0;
    for (auto& z : psi) {
      z = complex(g(gen), g(gen));
      norm += std::norm(z);
    }
    // rho_A = M M^dagger / norm with M the 2x2 coefficient matrix
    const double r00 = (std::norm(psi[0]) + std::norm(psi[1])) / norm;
    const double r11 = (std::norm(psi[2]) + std::norm(psi[3])) / norm;
    const complex r01 = (psi[0] * std::conj(psi[2]) + psi[1] * std::conj(psi[3])) / norm;
    mc += r00 * r00 + r11 * r11 + 2 * std::norm(r01);
  }
  mc /= samples;
  EXPECT_NEAR(mc, 0.8, 0.01);
  EXPECT_NEAR(library_mean, mc, 0.01);
}

TEST(RandomEnsembles, HilbertSchmidtPurityMoment) {
  // E[Tr rho^2] = 2N/(N^2 + 1) for the full-rank measure on N = 4.
  const int samples = 10000;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(161, static_cast<std::uint64_t>(i));
    sum += random_mixed(2, 2, rng).purity();
  }
  EXPECT_NEAR(sum / samples, 8.0 / 17.0, 0.005);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Rng a = Rng::stream(1, 0), b = Rng::stream(1, 0), c = Rng::stream(1, 1), e = Rng::stream(2, 0);
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, e());
  Rng u(7);
  double mean = 0, var = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = u.normal();
    mean += x;
    var += x * x;
  }
  mean /= n;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var / n - mean * mean, 1.0, 0.02);
}

TEST(LocalOperations, SwapSubsystemsTwice) {
  Rng rng(3);
  const auto rho = random_mixed(2, 3, rng);
  const auto s = swap_subsystems(rho);
  EXPECT_EQ(s.dim_a(), 3u);
  EXPECT_LT(max_abs_diff(partial_trace(s, Subsystem::A), partial_trace(rho, Subsystem::B)), 1e-15);
  EXPECT_LT(max_abs_diff(swap_subsystems(s).matrix(), rho.matrix()), 1e-15);
  EXPECT_THROW(conjugate_locally(rho, ComplexMatrix::identity(3), ComplexMatrix::identity(3)), DimensionMismatch);
}
