#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsl {

enum class GridKind { uniform, logarithmic, hybrid };

inline std::string to_string(GridKind k) {
  switch (k) {
    case GridKind::uniform: return "uniform";
    case GridKind::logarithmic: return "logarithmic";
    case GridKind::hybrid: return "hybrid";
  }
  return "unknown";
}

/// Strictly increasing radii in (0,1]; the last node is exactly 1.
struct Grid {
  std::vector<double> nodes;
  GridKind kind = GridKind::logarithmic;

  double r_min() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }
  double operator[](std::size_t i) const { return nodes[i]; }

  /// Index of the last node <= r (nodes.front() if r precedes the grid).
  std::size_t lower_index(double r) const {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
    if (it == nodes.begin()) return 0;
    return static_cast<std::size_t>(it - nodes.begin()) - 1;
  }
};

/// Builds an n-node grid on [r_min, 1].  Logarithmic grids place nodes
/// geometrically; hybrid grids are geometric up to 0.1 and uniform above.
inline Grid build_grid(GridKind kind, std::size_t n, double r_min) {
  if (!(r_min > 0.0) || r_min >= 1.0)
    throw std::invalid_argument("build_grid: r_min must lie in (0,1), got " +
                                std::to_string(r_min));
  if (n < 16)
    throw std::invalid_argument("build_grid: need at least 16 nodes, got " +
                                std::to_string(n));

  Grid g;
  g.kind = kind;
  g.nodes.resize(n);
  const std::size_t last = n - 1;
  switch (kind) {
    case GridKind::uniform: {
      for (std::size_t k = 0; k < n; ++k)
        g.nodes[k] = r_min + (1.0 - r_min) * double(k) / double(last);
      break;
    }
    case GridKind::logarithmic: {
      const double L = std::log(r_min);
      for (std::size_t k = 0; k < n; ++k)
        g.nodes[k] = std::exp(L * (1.0 - double(k) / double(last)));
      break;
    }
    case GridKind::hybrid: {
      const double split = 0.1;
      if (r_min >= split / 2) {
        // Not enough room for a geometric section; degenerate to uniform.
        for (std::size_t k = 0; k < n; ++k)
          g.nodes[k] = r_min + (1.0 - r_min) * double(k) / double(last);
        break;
      }
      const std::size_t n_log = n / 2;
      const double L0 = std::log(r_min), L1 = std::log(split);
      for (std::size_t k = 0; k < n_log; ++k)
        g.nodes[k] = std::exp(L0 + (L1 - L0) * double(k) / double(n_log));
      for (std::size_t k = n_log; k < n; ++k)
        g.nodes[k] =
            split + (1.0 - split) * double(k - n_log) / double(last - n_log);
      break;
    }
  }
  g.nodes.front() = r_min;
  g.nodes.back() = 1.0;
  return g;
}

/// Default resolution for singular profiles: many decades below 1.
/// RSL_DEFAULT_GRID_N overrides the node count.
inline std::size_t default_grid_n() {
  if (const char* s = std::getenv("RSL_DEFAULT_GRID_N")) {
    const long v = std::atol(s);
    if (v >= 16) return static_cast<std::size_t>(v);
  }
  return 4096;
}

inline Grid default_grid() {
  return build_grid(GridKind::logarithmic, default_grid_n(), 1e-6);
}

}  // namespace rsl
