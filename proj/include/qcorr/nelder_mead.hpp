#pragma once

// Derivative-free Nelder-Mead simplex minimization with the standard
// coefficients (reflection 1, expansion 2, contraction 1/2, shrink 1/2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace qcorr {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of edge
/// `step`. Converges when the largest vertex distance from the best vertex
/// falls below `tol`.
template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, double step, double tol,
                             int max_iterations) {
  const std::size_t n = x0.size();
  if (n == 0) return {x0, f(x0), 0, true};

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto along = [&](double coeff, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coeff * (worst[j] - centroid[j]);
  };

  auto shrink = [&](std::size_t best) {
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = f(pts[i]);
    }
  };

  NelderMeadResult res;
  for (int it = 0; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) d2 += std::pow(pts[i][j] - pts[best][j], 2);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    res.iterations = it;
    if (diameter < tol) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);

    // Differences below rounding noise count as ties. A simplex whose values
    // all tie is shrunk toward its best vertex instead of cycling.
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(vals[best]), std::abs(vals[worst]));
    if (vals[worst] - vals[best] <= noise) {
      shrink(best);
      continue;
    }

    along(-1.0, trial, pts[worst]);
    const double fr = f(trial);
    if (fr < vals[best] - noise) {
      along(-2.0, trial2, pts[worst]);
      const double fe = f(trial2);
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second] - noise) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflected point beats the worst, else inside.
    const bool outside = fr < vals[worst];
    along(outside ? -0.5 : 0.5, trial2, pts[worst]);
    const double fc = f(trial2);
    if (fc <= (outside ? fr : vals[worst]) + noise) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    shrink(best);
  }

  const auto best = static_cast<std::size_t>(
      std::distance(vals.begin(), std::min_element(vals.begin(), vals.end())));
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace qcorr
