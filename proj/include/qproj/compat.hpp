#pragma once

// Compatibility diagnostics between a kernel and a dual functional. The
// governing symbol is u(xi) = theta(xi) conj(dual symbol(xi)); reconstruction
// quality is controlled by how fast 1 - u vanishes near the origin:
//   strict: u == 1 on a ball (machine-checked sup of |1-u|),
//   weak of order n: all derivatives of 1-u up to order n-1 vanish at 0.
// All built-in kernels and duals are tensor products, so every multivariate
// derivative of the symbol factors through one 1-D derivative sequence.

#include "qproj/kernels.hpp"

namespace qproj {

/// 1 - theta(xi) conj(dual symbol(xi)) at a point.
inline cplx compat_symbol_defect(const BandLimitedKernel& k, const DualFunctional& dual,
                                 const vecd& xi) {
  return cplx{1.0, 0.0} - k.spectrum(xi) * std::conj(dual.spectrum(xi));
}

namespace detail {

/// m-th derivative of g at 0 by central differences on half-integer offset
/// stencils, Richardson-extrapolated h, h/2, h/4 (leading error O(h^6)).
/// Requires g smooth on [-extent, extent] with extent = (m/2+1) h.
template <class G>
cplx central_derivative(G&& g, int m, double h) {
  if (m == 0) return g(0.0);
  auto diff = [&](double step) {
    cplx s{};
    for (int i = 0; i <= m; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      s += sign * binomial(m, i) * g((0.5 * m - i) * step);
    }
    return s / std::pow(step, m);
  };
  const cplx d1 = diff(h), d2 = diff(0.5 * h), d4 = diff(0.25 * h);
  const cplx r1 = (4.0 * d2 - d1) / 3.0;
  const cplx r2 = (4.0 * d4 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

/// Stencil half-extent used by central_derivative for order m at base step h.
inline double stencil_extent(int m, double h) { return (0.5 * m + 0.5) * h; }

}  // namespace detail

struct StrictCompatReport {
  bool strict_pass = false;   // sup |1-u| <= tol on the tested ball
  double max_defect = 0.0;    // measured sup of |1-u|
  double radius = 0.0;        // Euclidean radius of the tested ball
  double tol = 0.0;
  bool support_ok = false;    // supp theta inside (-1,1)^d (operator hypothesis)
  double support_margin = 0.0;
};

/// Max of |1 - u| over a tensor grid intersected with the Euclidean ball of
/// radius delta. strict_pass gates on the defect alone; support info rides
/// along for the operator-side hypothesis.
inline StrictCompatReport check_strict(const BandLimitedKernel& k, const DualFunctional& dual,
                                       double delta, double tol = 1e-10, int per_axis = 33) {
  require(delta > 0, "check_strict: delta > 0");
  require(per_axis >= 3, "check_strict: per_axis >= 3");
  StrictCompatReport rep;
  rep.radius = delta;
  rep.tol = tol;
  rep.support_ok = k.support() < 1.0;
  rep.support_margin = 1.0 - k.support();
  const int d = k.dim();
  vecd xi(d);
  auto coord = [&](int i) { return -delta + 2.0 * delta * i / (per_axis - 1); };
  if (d == 1) {
    for (int i = 0; i < per_axis; ++i) {
      xi[0] = coord(i);
      rep.max_defect = std::max(rep.max_defect, std::abs(compat_symbol_defect(k, dual, xi)));
    }
  } else {
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j) {
        xi[0] = coord(i);
        xi[1] = coord(j);
        if (sqr(xi[0]) + sqr(xi[1]) > sqr(delta) + 1e-15) continue;
        rep.max_defect = std::max(rep.max_defect, std::abs(compat_symbol_defect(k, dual, xi)));
      }
  }
  rep.strict_pass = rep.max_defect <= tol;
  return rep;
}

/// Largest n <= n_max such that all derivatives of 1-u of order < n vanish at
/// the origin (|.| <= tol after O(h^6) extrapolation). Returns 0 when the
/// defect itself is nonzero at 0 and saturates at n_max for strict pairs.
/// Throws when the FD stencil would leave the declared smoothness region.
inline int detect_weak_order(const BandLimitedKernel& k, const DualFunctional& dual, int n_max = 6,
                             double h0 = 0.02, double tol = 1e-6) {
  require(n_max >= 1 && n_max <= 8, "detect_weak_order: n_max in [1,8]");
  const double safe = std::min(k.smooth_radius(), dual.smooth_radius());
  if (detail::stencil_extent(n_max, h0) >= safe)
    throw hypothesis_error("detect_weak_order: FD stencil of half-width " +
                           detail::format_param(detail::stencil_extent(n_max, h0)) +
                           " exceeds the symbol's smoothness radius " + detail::format_param(safe));
  auto u = [&](double t) { return k.spectrum1(t) * std::conj(dual.spectrum1(t)); };
  // Tensor structure: every multivariate derivative of u at 0 is a product of
  // 1-D derivatives, so the first nonvanishing order is read off the 1-D
  // sequence u^(m)(0).
  if (std::abs(cplx{1.0, 0.0} - u(0.0)) > tol) return 0;
  for (int m = 1; m <= n_max; ++m) {
    const cplx dm = detail::central_derivative(u, m, h0);
    if (std::abs(dm) > tol) return m;
  }
  return n_max;
}

/// Entry of the derivative table: D^beta (1-u)(0).
struct DerivativeEntry {
  std::vector<int> beta;
  cplx value;
};

/// Derivatives of the defect 1-u at the origin for all multi-indices with
/// total order <= max_order, via the tensor factorization.
inline std::vector<DerivativeEntry> compat_derivative_table(const BandLimitedKernel& k,
                                                            const DualFunctional& dual,
                                                            int max_order = 3, double h0 = 0.02) {
  const double safe = std::min(k.smooth_radius(), dual.smooth_radius());
  if (detail::stencil_extent(std::max(max_order, 1), h0) >= safe)
    throw hypothesis_error("derivative table: FD stencil exceeds the symbol's smoothness radius");
  auto u = [&](double t) { return k.spectrum1(t) * std::conj(dual.spectrum1(t)); };
  std::vector<cplx> v(max_order + 1);
  for (int m = 0; m <= max_order; ++m) v[m] = detail::central_derivative(u, m, h0);

  std::vector<DerivativeEntry> table;
  const int d = k.dim();
  if (d == 1) {
    for (int m = 0; m <= max_order; ++m) {
      const cplx val = (m == 0) ? cplx{1.0, 0.0} - v[0] : -v[m];
      table.push_back({{m}, val});
    }
  } else {
    for (int m = 0; m <= max_order; ++m)
      for (int b0 = m; b0 >= 0; --b0) {
        const int b1 = m - b0;
        const cplx val = (m == 0) ? cplx{1.0, 0.0} - v[0] * v[0] : -v[b0] * v[b1];
        table.push_back({{b0, b1}, val});
      }
  }
  return table;
}

/// Order of the lattice moment condition on the generator: derivatives of
/// theta vanish at every nonzero integer point. Band-limited generators with
/// supp theta inside (-1,1)^d satisfy it to all orders; returns -1 (infinite)
/// once that support claim is grid-confirmed, otherwise the smallest failing
/// order, or n when all orders < n hold.
inline int check_strang_fix(const BandLimitedKernel& k, int lattice_radius = 3, int n = 4,
                            double tol = 1e-9) {
  require(lattice_radius >= 1 && n >= 1, "check_strang_fix: positive radius and order");
  if (k.support() < 1.0) {
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double xi = k.support() + (lattice_radius + 0.5 - k.support()) * i / 400.0;
      worst = std::max(worst, std::abs(k.spectrum1(xi)));
    }
    if (worst <= tol) return -1;
  }
  // Tensor structure: D^beta theta(l) = prod theta1^{(beta_i)}(l_i), and a
  // product vanishes when any factor with l_i != 0 does. It therefore
  // suffices that theta1^{(m)}(a) = 0 for all integers a != 0, m < n.
  const double h0 = 0.04;
  for (int m = 0; m < n; ++m)
    for (int a = 1; a <= lattice_radius; ++a) {
      auto g = [&](double t) { return k.spectrum1(a + t); };
      const cplx dm = detail::central_derivative(g, m, h0);
      if (std::abs(dm) > tol) return m;
    }
  return n;
}

/// Combined report for kernel/dual pairs: the CLI-facing compatibility audit.
struct CompatReport {
  std::string kernel_id, dual_id;
  StrictCompatReport strict;
  int weak_order = 0;
  std::vector<DerivativeEntry> derivative_table;
  int strang_fix_order = 0;  // -1 means infinite
};

inline CompatReport compat_report(const BandLimitedKernel& k, const DualFunctional& dual,
                                  double delta, int n_max = 6, int table_order = 3) {
  CompatReport rep;
  rep.kernel_id = k.id();
  rep.dual_id = dual.id();
  rep.strict = check_strict(k, dual, delta);
  rep.weak_order = detect_weak_order(k, dual, n_max);
  rep.derivative_table = compat_derivative_table(k, dual, table_order);
  rep.strang_fix_order = check_strang_fix(k);
  return rep;
}

}  // namespace qproj
