#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsl/constants.hpp"
#include "rsl/grid.hpp"
#include "rsl/nonlinearity.hpp"
#include "rsl/profile.hpp"
#include "rsl/weak.hpp"

namespace rsl {

/// Outcomes a catalog entry is expected to produce, stored as data so that
/// a regression in any analysis module shows up as catalog disagreement.
struct ExpectedOutcomes {
  std::optional<bool> semi_stable;
  std::optional<bool> non_energy;
  std::optional<WeakVerdict> weak;
  std::optional<double> power_exponent;  ///< growth exponent of |u|, if power-like
};

/// A closed-form solution family member paired with its nonlinearity and
/// the expected check outcomes.
struct CatalogEntry {
  std::string id;
  RadialProfile profile;
  Nonlinearity nl;
  std::optional<double> lambda;
  ExpectedOutcomes expected;
};

/// Stability boundary of the power family u = r^alpha: alpha at which the
/// linearized potential meets the optimal Hardy constant.
inline double alpha_stability_boundary(int dimension) {
  return sharp_exponent(dimension);  // 2 - N/2 - sqrt(N-1)
}

/// u(r) = r^alpha with the matching power nonlinearity.  Semi-stable
/// exactly for alpha at or below the Hardy boundary (any alpha < 0 in
/// dimension 2); non-energy exactly for alpha <= (2-N)/2.  Does not meet
/// the homogeneous boundary condition, so never a weak solution of the
/// Dirichlet problem.
inline CatalogEntry make_alpha_family(int dimension, double alpha,
                                      const Grid& grid) {
  if (!(alpha < 0.0))
    throw std::invalid_argument("make_alpha_family: need alpha < 0");
  if (dimension < 2)
    throw std::invalid_argument("make_alpha_family: need N >= 2");
  CatalogEntry e;
  std::ostringstream os;
  os.precision(17);
  os << "alpha:N=" << dimension << ",a=" << alpha;
  e.id = os.str();
  e.profile = make_closed_form_profile(
      dimension, grid, [alpha](double r) { return std::pow(r, alpha); },
      [alpha](double r) { return alpha * std::pow(r, alpha - 1.0); });
  e.nl = Nonlinearity::alpha_family(alpha, dimension);
  e.expected.semi_stable =
      (dimension == 2) || alpha <= alpha_stability_boundary(dimension) + 1e-12;
  e.expected.non_energy = alpha <= 0.5 * (2.0 - dimension) + 1e-12;
  e.expected.weak = WeakVerdict::not_weak;
  e.expected.power_exponent = alpha;
  return e;
}

/// Scale of the power nonlinearity solved by u = r^{-2/(p-1)} - 1.
inline double bv_power_lambda(int dimension, double p) {
  return 2.0 * (dimension * p - 2.0 * p - dimension) / ((p - 1.0) * (p - 1.0));
}

/// u(r) = r^{-2/(p-1)} - 1 with f(u) = lambda (1+u)^p.  An unbounded weak
/// solution for every admissible (N, p); semi-stable exactly up to the
/// critical power; non-energy exactly when 2/(p-1) >= (N-2)/2.
inline CatalogEntry make_bv_power(int dimension, double p, const Grid& grid) {
  if (dimension < 3)
    throw std::invalid_argument("make_bv_power: need N >= 3");
  if (!(p > double(dimension) / double(dimension - 2)))
    throw std::invalid_argument("make_bv_power: need p > N/(N-2)");
  const double theta = 2.0 / (p - 1.0);
  CatalogEntry e;
  std::ostringstream os;
  os.precision(17);
  os << "bvpower:N=" << dimension << ",p=" << p;
  e.id = os.str();
  e.profile = make_closed_form_profile(
      dimension, grid, [theta](double r) { return std::pow(r, -theta) - 1.0; },
      [theta](double r) { return -theta * std::pow(r, -theta - 1.0); });
  const double lambda = bv_power_lambda(dimension, p);
  e.nl = Nonlinearity::power(p, lambda);
  e.lambda = lambda;
  e.expected.semi_stable = p <= critical_power(dimension) + 1e-12;
  e.expected.non_energy = theta >= 0.5 * (dimension - 2.0) - 1e-12;
  e.expected.weak = WeakVerdict::singular_weak;
  e.expected.power_exponent = -theta;
  return e;
}

/// u(r) = -2 log r with f(u) = 2(N-2) e^u.  The singular member of the
/// exponential family: a weak solution for every N >= 3, in the energy
/// class for all of them, semi-stable exactly from dimension 10 on.
inline CatalogEntry make_exponential_singular(int dimension, const Grid& grid) {
  if (dimension < 3)
    throw std::invalid_argument("make_exponential_singular: need N >= 3");
  CatalogEntry e;
  std::ostringstream os;
  os << "expsing:N=" << dimension;
  e.id = os.str();
  e.profile = make_closed_form_profile(
      dimension, grid, [](double r) { return -2.0 * std::log(r); },
      [](double r) { return -2.0 / r; });
  const double lambda = 2.0 * (dimension - 2.0);
  e.nl = Nonlinearity::exponential(lambda);
  e.lambda = lambda;
  e.expected.semi_stable = dimension >= 10;
  e.expected.non_energy = false;
  e.expected.weak = WeakVerdict::singular_weak;
  return e;
}

struct LiouvillePoint {
  double lambda = 0.0;
  double m = 0.0;  ///< center value u(0) = 2 log(1+b)
  RadialProfile profile;
};

/// Closed-form exponential branch on the disk:
///   u(r) = 2 log(1+b) - 2 log(1+b r^2),  -Delta u = lambda e^u,
///   lambda = 8b/(1+b)^2.
/// The residual vanishes identically; b = 1 is the fold (lambda = 2).
inline LiouvillePoint liouville_disk_branch(double b, const Grid& grid) {
  if (!(b >= 0.0))
    throw std::invalid_argument("liouville_disk_branch: need b >= 0");
  LiouvillePoint pt;
  pt.lambda = 8.0 * b / ((1.0 + b) * (1.0 + b));
  pt.m = 2.0 * std::log1p(b);
  pt.profile = make_closed_form_profile(
      2, grid,
      [b](double r) { return 2.0 * std::log1p(b) - 2.0 * std::log1p(b * r * r); },
      [b](double r) { return -4.0 * b * r / (1.0 + b * r * r); });
  return pt;
}

inline CatalogEntry make_liouville(double b, const Grid& grid) {
  LiouvillePoint pt = liouville_disk_branch(b, grid);
  CatalogEntry e;
  std::ostringstream os;
  os.precision(17);
  os << "liouville:b=" << b;
  e.id = os.str();
  e.profile = std::move(pt.profile);
  e.nl = Nonlinearity::exponential(pt.lambda);
  e.lambda = pt.lambda;
  e.expected.semi_stable = b <= 1.0 + 1e-12;  // fold at b = 1
  e.expected.non_energy = false;
  e.expected.weak = WeakVerdict::regular_weak;
  return e;
}

/// u(r) = -log r with f = 0 in dimension 2: harmonic, non-energy,
/// semi-stable, but with nonvanishing flux, hence never weak.
inline CatalogEntry make_log_2d(const Grid& grid) {
  CatalogEntry e;
  e.id = "log2d";
  e.profile = make_closed_form_profile(
      2, grid, [](double r) { return -std::log(r); },
      [](double r) { return -1.0 / r; });
  e.nl = Nonlinearity::zero();
  e.expected.semi_stable = true;
  e.expected.non_energy = true;
  e.expected.weak = WeakVerdict::not_weak;
  return e;
}

/// u identically constant with f = 0.
inline CatalogEntry make_constant(int dimension, double c, const Grid& grid) {
  CatalogEntry e;
  std::ostringstream os;
  os.precision(17);
  if (c == 0.0)
    os << "zero:N=" << dimension;
  else
    os << "const:N=" << dimension << ",c=" << c;
  e.id = os.str();
  e.profile = make_closed_form_profile(
      dimension, grid, [c](double) { return c; }, [](double) { return 0.0; });
  e.nl = Nonlinearity::zero();
  e.expected.semi_stable = true;
  e.expected.non_energy = false;
  e.expected.weak = (c == 0.0) ? WeakVerdict::regular_weak : WeakVerdict::not_weak;
  return e;
}

/// The fixed roster every cross-module regression runs over.
inline std::vector<CatalogEntry> standard_catalog(const Grid& grid) {
  std::vector<CatalogEntry> entries;
  entries.push_back(make_alpha_family(2, -0.1, grid));
  entries.push_back(make_alpha_family(2, -1.0, grid));
  entries.push_back(make_alpha_family(3, -1.5, grid));
  entries.push_back(make_alpha_family(6, alpha_stability_boundary(6), grid));
  entries.push_back(make_alpha_family(10, -6.0, grid));
  entries.push_back(make_alpha_family(10, -6.5, grid));
  entries.push_back(make_alpha_family(10, -3.0, grid));
  entries.push_back(make_bv_power(10, 4.0 / 3.0, grid));
  entries.push_back(make_bv_power(10, 1.3, grid));
  entries.push_back(make_bv_power(10, 1.45, grid));
  entries.push_back(make_bv_power(3, 3.1, grid));
  entries.push_back(make_bv_power(3, 4.0, grid));
  entries.push_back(make_exponential_singular(3, grid));
  entries.push_back(make_exponential_singular(9, grid));
  entries.push_back(make_exponential_singular(10, grid));
  entries.push_back(make_liouville(0.25, grid));
  entries.push_back(make_liouville(1.0, grid));
  entries.push_back(make_liouville(3.0, grid));
  entries.push_back(make_log_2d(grid));
  entries.push_back(make_constant(5, 0.0, grid));
  entries.push_back(make_constant(3, 3.0, grid));
  return entries;
}

/// Parses ids of the form "alpha:N=10,a=-6", "bvpower:N=3,p=4",
/// "expsing:N=10", "liouville:b=1", "log2d", "zero:N=5", "const:N=3,c=3".
inline CatalogEntry catalog_entry_from_id(const std::string& id,
                                          const Grid& grid) {
  auto colon = id.find(':');
  const std::string name = id.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::string rest = id.substr(colon + 1);
    std::istringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("catalog id: bad parameter '" + tok + "'");
      kv[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
    }
  }
  auto need = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end())
      throw std::invalid_argument(std::string("catalog id: missing ") + k);
    return it->second;
  };
  if (name == "alpha")
    return make_alpha_family(int(need("N")), need("a"), grid);
  if (name == "bvpower") return make_bv_power(int(need("N")), need("p"), grid);
  if (name == "expsing") return make_exponential_singular(int(need("N")), grid);
  if (name == "liouville") return make_liouville(need("b"), grid);
  if (name == "log2d") return make_log_2d(grid);
  if (name == "zero") return make_constant(int(need("N")), 0.0, grid);
  if (name == "const") return make_constant(int(need("N")), need("c"), grid);
  throw std::invalid_argument("catalog id: unknown family '" + name + "'");
}

}  // namespace rsl
