#pragma once

// Gauss-Legendre quadrature: cached nodes/weights, panel composition, and a
// cubic grading transform for integrands with an algebraic singularity at an
// interior point.

#include <map>
#include <utility>

#include "qproj/common.hpp"

namespace qproj {

struct GaussLegendre {
  vecd x;  // nodes on [-1,1]
  vecd w;  // weights, sum = 2
};

/// Nodes/weights by Newton iteration on P_n; cached per n.
inline const GaussLegendre& gauss_legendre(int n) {
  require(n >= 1 && n <= 4096, "gauss_legendre: order out of range");
  static std::map<int, GaussLegendre> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Initial guess (Chebyshev-like), then Newton on P_n(x)=0.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: p0=1, p1=x.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    g.x[n - 1 - i] = x;  // ascending order
    g.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  auto [pos, ok] = cache.emplace(n, std::move(g));
  (void)ok;
  return pos->second;
}

/// integral of f over [a,b], n-point Gauss-Legendre.
template <class F>
auto integrate(F&& f, double a, double b, int n) {
  const auto& g = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  using R = decltype(f(a) * 1.0);
  R s{};
  for (int i = 0; i < n; ++i) s += R(f(mid + half * g.x[i])) * (half * g.w[i]);
  return s;
}

/// Composite rule: [a,b] split into `panels` equal panels, n points each.
template <class F>
auto integrate_panels(F&& f, double a, double b, int n, int panels) {
  using R = decltype(f(a) * 1.0);
  R s{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) s += integrate(f, a + p * h, a + (p + 1) * h, n);
  return s;
}

/// integral of f over [a,b] where f may have an algebraic singularity at s
/// (interior or endpoint). Each side of s is mapped by a cubic substitution
/// x = s + (e-s) t^3 whose Jacobian 3t^2 absorbs |x-s|^sigma, sigma > -3.
template <class F>
double integrate_graded(F&& f, double a, double b, double s, int n) {
  auto side = [&](double e) {
    // Oriented integral from s to e under x = s + (e-s) t^3.
    return (e - s) * integrate([&](double t) { return f(s + (e - s) * t * t * t) * 3.0 * t * t; }, 0.0, 1.0, n);
  };
  if (s < a || s > b) return integrate(f, a, b, n);
  if (s == a) return side(b);
  if (s == b) return -side(a);
  return side(b) - side(a);
}

}  // namespace qproj
