#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rsl {

/// Number of eigenvalues of the symmetric tridiagonal matrix
/// (diag, off) below sigma, by the Sturm sequence of the LDL^T pivots.
/// Exact zero pivots are nudged negative (and counted), which shifts the
/// query by one ulp at worst; IEEE infinities propagate harmlessly
/// through the recurrence.
inline int sturm_count_below(const std::vector<double>& diag,
                             const std::vector<double>& off, double sigma) {
  const std::size_t n = diag.size();
  int count = 0;
  double q = diag[0] - sigma;
  for (std::size_t i = 0;;) {
    if (q == 0.0) q = -1e-300;
    if (q < 0) ++count;
    if (++i >= n) break;
    q = diag[i] - sigma - off[i - 1] * off[i - 1] / q;
  }
  return count;
}

/// Smallest eigenvalue of a symmetric tridiagonal matrix by Sturm-sequence
/// bisection.  Deterministic, robust for the graded matrices produced by
/// the radial discretizations here.
inline double tridiag_smallest_eigenvalue(const std::vector<double>& diag,
                                          const std::vector<double>& off) {
  const std::size_t n = diag.size();
  if (n == 0) throw std::invalid_argument("tridiag: empty matrix");
  if (off.size() + 1 != n)
    throw std::invalid_argument("tridiag: off-diagonal size mismatch");

  // Gershgorin bracket.
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }

  // The span can run to 1/h_min^2 on strongly graded grids, so the exit
  // test must not scale with it: bisect until the interval collapses in
  // floating point or becomes tiny relative to the eigenvalue itself.
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count_below(diag, off, mid) >= 1) hi = mid; else lo = mid;
    if (hi - lo <= 1e-13 * std::max(std::abs(lo), std::abs(hi)) + 1e-300)
      break;
  }
  return 0.5 * (lo + hi);
}

/// Inverse-iteration eigenvector for a symmetric tridiagonal matrix at an
/// approximate eigenvalue.  Used to extract discrete minimizers as sampled
/// test functions.
inline std::vector<double> tridiag_eigenvector(const std::vector<double>& diag,
                                               const std::vector<double>& off,
                                               double lambda) {
  const std::size_t n = diag.size();
  std::vector<double> v(n, 1.0);
  // A couple of inverse-iteration sweeps with the shifted Thomas solve.
  for (int sweep = 0; sweep < 3; ++sweep) {
    std::vector<double> c(n), d(n), x(n);
    double piv = diag[0] - lambda;
    if (std::abs(piv) < 1e-12) piv = 1e-12;
    c[0] = (n > 1) ? off[0] / piv : 0.0;
    d[0] = v[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
      double denom = diag[i] - lambda - off[i - 1] * c[i - 1];
      if (std::abs(denom) < 1e-12) denom = 1e-12;
      c[i] = (i + 1 < n) ? off[i] / denom : 0.0;
      d[i] = (v[i] - off[i - 1] * d[i - 1]) / denom;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    for (std::size_t i = 0; i < n; ++i) v[i] = x[i] / norm;
  }
  return v;
}

}  // namespace rsl
