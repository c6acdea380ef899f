#pragma once

// Reference computations for the tests. Written without the library so
// each result is checked against an independent path.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

inline double quad(double r) { return 4.0 * r * (1.0 - r); }

/// Root of a monotone g on [lo, hi] with g(lo), g(hi) on opposite sides of target.
inline double bisect(const std::function<double(double)>& g, double lo, double hi, double target) {
  const bool rising = g(hi) > g(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) < target) == rising)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double sgn(double v) { return (v > 0) - (v < 0); }

/// Entropy flux with the sign convention sgn(0) = 0, for an n-incoming node.
template <class F>
double entropy(const F& f, const std::vector<double>& rho, std::size_t n, double k) {
  double v = 0.0;
  for (std::size_t l = 0; l < rho.size(); ++l) {
    const double t = sgn(rho[l] - k) * (f(rho[l]) - f(k));
    v += l < n ? t : -t;
  }
  return v;
}

/// Minimum of the entropy flux over a uniform grid of `points` k-values.
template <class F>
double grid_min_entropy(const F& f, const std::vector<double>& rho, std::size_t n,
                        std::size_t points = 100001) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < points; ++q)
    best = std::min(best, entropy(f, rho, n, static_cast<double>(q) / (points - 1)));
  return best;
}

/// Projection onto {0 <= x <= c, sum x = total} by enumerating every
/// lower/free/upper partition and keeping the closest feasible candidate.
inline std::vector<double> project_by_partitions(const std::vector<double>& t,
                                                 const std::vector<double>& c, double total) {
  const std::size_t n = t.size();
  std::size_t combos = 1;
  for (std::size_t k = 0; k < n; ++k) combos *= 3;
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<int> part(n);
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t rest = code;
    for (std::size_t k = 0; k < n; ++k) {
      part[k] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    double fixed = 0.0;
    double free_t = 0.0;
    std::size_t nfree = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (part[k] == 2) fixed += c[k];
      if (part[k] == 1) {
        free_t += t[k];
        ++nfree;
      }
    }
    std::vector<double> x(n, 0.0);
    if (nfree == 0) {
      if (std::abs(fixed - total) > 1e-12) continue;
      for (std::size_t k = 0; k < n; ++k) x[k] = part[k] == 2 ? c[k] : 0.0;
    } else {
      const double lambda = (free_t + fixed - total) / static_cast<double>(nfree);
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        if (part[k] == 0) x[k] = 0.0;
        if (part[k] == 2) x[k] = c[k];
        if (part[k] == 1) {
          x[k] = t[k] - lambda;
          ok = x[k] >= -1e-15 && x[k] <= c[k] + 1e-15;
        }
      }
      if (!ok) continue;
    }
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) d += (x[k] - t[k]) * (x[k] - t[k]);
    if (d < best_dist) {
      best_dist = d;
      best = x;
    }
  }
  return best;
}

/// Maximizer of gamma1 + gamma2 over {0 <= gamma <= d, A gamma <= c} for a
/// two-column A: scan gamma1 on a grid, then refine by ternary search (the
/// objective is concave in gamma1).
inline std::vector<double> lp_grid_2d(const std::vector<double>& d, const std::vector<double>& c,
                                      const std::vector<std::vector<double>>& A,
                                      std::size_t cells = 1000000) {
  auto best_g2 = [&](double g1) {
    double g2 = d[1];
    for (std::size_t j = 0; j < A.size(); ++j) g2 = std::min(g2, (c[j] - A[j][0] * g1) / A[j][1]);
    return g2;
  };
  auto value = [&](double g1) {
    const double g2 = best_g2(g1);
    return g2 < 0.0 ? -std::numeric_limits<double>::infinity() : g1 + g2;
  };
  double arg = 0.0;
  double val = value(0.0);
  const double h = d[0] / static_cast<double>(cells);
  for (std::size_t q = 1; q <= cells; ++q) {
    const double g1 = h * static_cast<double>(q);
    const double v = value(g1);
    if (v > val) {
      val = v;
      arg = g1;
    }
  }
  double lo = std::max(0.0, arg - h);
  double hi = std::min(d[0], arg + h);
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (value(m1) < value(m2))
      lo = m1;
    else
      hi = m2;
  }
  const double g1 = 0.5 * (lo + hi);
  return {g1, best_g2(g1)};
}

/// Random flux-balanced 2x2 state for the quadratic flux: three uniform
/// densities, the fourth solved on a random branch.
template <class Rng>
std::vector<double> balanced_2x2(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    std::vector<double> r{u(rng), u(rng), u(rng), 0.0};
    const double g = quad(r[0]) + quad(r[1]) - quad(r[2]);
    if (g < 0.0 || g > 1.0) continue;
    const double s = std::sqrt(std::max(0.0, 1.0 - g));
    r[3] = 0.5 + (u(rng) < 0.5 ? 0.5 : -0.5) * s;
    // Put the solved density on a random outgoing arc.
    if (u(rng) < 0.5) std::swap(r[2], r[3]);
    return r;
  }
}

}  // namespace oracle
