#pragma once

// Error metrics and approximation-theoretic functionals on grids:
// weighted L_p norms (weight applied as w, 1/w, or not at all; full grid or
// the central interior box), moduli of smoothness (isotropic and
// dilation-adapted), Steklov-type smoothing, best band-limited approximation,
// and spectral tail bounds. Rate fitting turns per-level error curves into
// slope reports.

#include <limits>

#include "qproj/operators.hpp"

namespace qproj {

enum class WeightMode { times_w, over_w, unweighted };
enum class Region { full, interior };

inline GridSignal grid_subtract(const GridSignal& a, const GridSignal& b) {
  require(a.dim == b.dim && a.n == b.n && a.half_width == b.half_width,
          "grid_subtract: incompatible grids");
  GridSignal r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
  return r;
}

inline double grid_max_abs(const GridSignal& g) {
  double m = 0.0;
  for (const auto& v : g.values) m = std::max(m, std::abs(v));
  return m;
}

/// Weight samples on the grid's tensor coordinates (computed once and reused
/// across levels; band-limited weights are expensive per point).
inline vecd weight_grid_samples(const GridSignal& g, const Weight& w) {
  require(g.dim == w.dim, "weight samples: dimension mismatch");
  if (w.dim == 1) {
    vecd out(g.n);
    for (std::size_t i = 0; i < g.n; ++i) out[i] = w.eval({g.coord(i)});
    return out;
  }
  vecd out(g.values.size());
  vecd x(2);
  for (std::size_t i = 0; i < g.n; ++i) {
    x[0] = g.coord(i);
    for (std::size_t j = 0; j < g.n; ++j) {
      x[1] = g.coord(j);
      out[i * g.n + j] = w.eval(x);
    }
  }
  return out;
}

/// Discrete weighted L_p norm (h^d sum |g w^{+-1}|^p)^{1/p}; p = infinity
/// gives the sup. Region::interior restricts to the central [-L/2, L/2]^d box.
inline double weighted_norm(const GridSignal& g, double p, WeightMode mode, const vecd& w_samples,
                            Region region = Region::full) {
  require(p >= 1.0, "weighted_norm: p >= 1");
  if (mode != WeightMode::unweighted)
    require(w_samples.size() == g.values.size(), "weighted_norm: weight sample size mismatch");
  const bool inf_norm = std::isinf(p);
  const double half = 0.5 * g.half_width;
  std::vector<std::size_t> idx;
  double sum = 0.0, sup = 0.0;
  std::size_t count = 0;
  for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
    if (region == Region::interior) {
      g.unindex(flat, idx);
      bool inside = true;
      for (int l = 0; l < g.dim; ++l)
        inside = inside && std::abs(g.coord(idx[l])) <= half + 1e-12;
      if (!inside) continue;
    }
    double v = std::abs(g.values[flat]);
    if (mode == WeightMode::times_w) v *= w_samples[flat];
    if (mode == WeightMode::over_w) v /= w_samples[flat];
    if (inf_norm)
      sup = std::max(sup, v);
    else
      sum += std::pow(v, p);
    ++count;
  }
  if (inf_norm) return sup;
  require(count > 0, "weighted_norm: empty region");
  double cell = 1.0;
  for (int l = 0; l < g.dim; ++l) cell *= g.step();
  return std::pow(sum * cell, 1.0 / p);
}

inline double weighted_norm(const GridSignal& g, double p, WeightMode mode, const Weight& w,
                            Region region = Region::full) {
  if (mode == WeightMode::unweighted) return weighted_norm(g, p, mode, vecd{}, region);
  return weighted_norm(g, p, mode, weight_grid_samples(g, w), region);
}

// ---- moduli of smoothness --------------------------------------------------------

namespace detail {

/// Delta_delta^n f sampled on the grid coordinates: sum_i (-1)^i C(n,i)
/// f(x + (n-i) delta), evaluated pointwise (signals evaluate anywhere).
inline GridSignal sampled_difference(const std::function<cplx(const vecd&)>& f, int dim, int n_order,
                                     const vecd& delta, std::size_t grid_n, double grid_half) {
  GridSignal g = make_grid(dim, grid_n, grid_half);
  vecd x(dim);
  std::vector<std::size_t> idx;
  std::vector<double> coef(n_order + 1);
  for (int i = 0; i <= n_order; ++i)
    coef[i] = ((i % 2 == 0) ? 1.0 : -1.0) * binomial(n_order, i);
  for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
    g.unindex(flat, idx);
    cplx s{};
    for (int i = 0; i <= n_order; ++i) {
      for (int l = 0; l < dim; ++l) x[l] = g.coord(idx[l]) + double(n_order - i) * delta[l];
      s += coef[i] * f(x);
    }
    g.values[flat] = s;
  }
  return g;
}

/// Deterministic unit directions: the axes, then seeded uniform sphere points.
inline std::vector<vecd> direction_set(int dim, int random_dirs, std::uint64_t seed) {
  std::vector<vecd> dirs;
  for (int l = 0; l < dim; ++l) {
    vecd e(dim, 0.0);
    e[l] = 1.0;
    dirs.push_back(e);
  }
  Rng rng(seed);
  for (int r = 0; r < random_dirs; ++r) {
    vecd u(dim);
    double nrm = 0.0;
    do {
      for (int l = 0; l < dim; ++l) u[l] = rng.normal();
      nrm = norm2(u);
    } while (nrm < 1e-3);
    for (int l = 0; l < dim; ++l) u[l] /= nrm;
    dirs.push_back(u);
  }
  return dirs;
}

}  // namespace detail

struct ModulusOptions {
  std::size_t grid_n = 1024;
  double grid_half = 16.0;
  int random_dirs = 12;
  std::uint64_t seed = 2026;
  Region region = Region::full;
};

/// omega_n(f, h)_{p,1/w}: sup over sampled |delta| <= h of the weighted norm
/// of Delta_delta^n f. n = 0 returns the norm of f itself. The direction set
/// (axes + seeded sphere points) and radii {1, 1/2, 1/4} h are deterministic.
inline double modulus(const Signal& f, int n_order, double h, double p, const Weight& w,
                      const ModulusOptions& opt = {}) {
  require(n_order >= 0 && n_order <= 6, "modulus: order in [0,6]");
  require(h > 0, "modulus: h > 0");
  if (double(n_order) * h > opt.grid_half)
    throw config_error("modulus: step n*h exceeds the evaluation grid margin");
  auto feval = [&f](const vecd& x) { return f.eval(x); };
  const vecd wsamp = weight_grid_samples(make_grid(f.dim, opt.grid_n, opt.grid_half), w);
  if (n_order == 0) {
    GridSignal g =
        detail::sampled_difference(feval, f.dim, 0, vecd(f.dim, 0.0), opt.grid_n, opt.grid_half);
    return weighted_norm(g, p, WeightMode::over_w, wsamp, opt.region);
  }
  double best = 0.0;
  const auto dirs = detail::direction_set(f.dim, opt.random_dirs, opt.seed);
  for (const auto& u : dirs)
    for (double scale : {1.0, 0.5, 0.25}) {
      vecd delta(f.dim);
      for (int l = 0; l < f.dim; ++l) delta[l] = scale * h * (1.0 - 1e-9) * u[l];
      GridSignal g =
          detail::sampled_difference(feval, f.dim, n_order, delta, opt.grid_n, opt.grid_half);
      best = std::max(best, weighted_norm(g, p, WeightMode::over_w, wsamp, opt.region));
    }
  return best;
}

/// Modulus of an interpolated grid table (order-6 tensor Lagrange windows).
inline double modulus(const GridSignal& table, int n_order, double h, double p, const Weight& w,
                      const ModulusOptions& opt = {}) {
  Signal f;
  f.dim = table.dim;
  f.id = "grid-table";
  auto tbl = std::make_shared<GridSignal>(table);
  f.direct = [tbl](const vecd& x) { return interpolate(*tbl, x, 6); };
  return modulus(f, n_order, h, p, w, opt);
}

/// Omega_n(f, M^{-j}): sup over the ellipsoid |M^j delta| < 1, sampled as
/// delta = scale (1-eps) M^{-j} u over unit directions u. Always bounded by
/// omega_n(f, |M^{-j}|) on the same direction set.
inline double anisotropic_modulus(const Signal& f, int n_order, const DilationMatrix& M, int j,
                                  double p, const Weight& w, const ModulusOptions& opt = {}) {
  require(n_order >= 1 && n_order <= 6, "anisotropic_modulus: order in [1,6]");
  auto feval = [&f](const vecd& x) { return f.eval(x); };
  const vecd wsamp = weight_grid_samples(make_grid(f.dim, opt.grid_n, opt.grid_half), w);
  double best = 0.0;
  const auto dirs = detail::direction_set(f.dim, opt.random_dirs, opt.seed);
  for (const auto& u : dirs)
    for (double scale : {1.0, 0.5, 0.25}) {
      vecd delta = M.apply(-j, u);
      for (int l = 0; l < f.dim; ++l) delta[l] *= scale * (1.0 - 1e-9);
      GridSignal g =
          detail::sampled_difference(feval, f.dim, n_order, delta, opt.grid_n, opt.grid_half);
      best = std::max(best, weighted_norm(g, p, WeightMode::over_w, wsamp, opt.region));
    }
  return best;
}

// ---- Steklov-type smoothing -------------------------------------------------------

namespace detail {
/// B-spline density beta_n on [0, n] (n-fold convolution of the uniform
/// density on [0,1]); closed forms for n <= 3.
inline double bspline(int n, double t) {
  if (t <= 0.0 || t >= double(n)) return 0.0;
  switch (n) {
    case 1:
      return 1.0;
    case 2:
      return t <= 1.0 ? t : 2.0 - t;
    case 3: {
      if (t <= 1.0) return 0.5 * t * t;
      if (t <= 2.0) return 0.5 * (-2.0 * t * t + 6.0 * t - 3.0);
      return 0.5 * (3.0 - t) * (3.0 - t);
    }
    default:
      throw std::invalid_argument("bspline: order must be 1..3");
  }
}
}  // namespace detail

/// Steklov-type smoothing at unit step: g(x) = sum_{k=1}^n (-1)^{k+1} C(n,k)
/// int_{[0,n]^d} f(x + k t) prod beta_n(t_l) dt. f - g is then an average of
/// n-th differences, so ||f - g|| is controlled by omega_n(f, 1).
inline Signal steklov_smooth(const Signal& f, int n_order) {
  require(n_order >= 1 && n_order <= 3, "steklov_smooth: order in [1,3]");
  Signal g;
  g.dim = f.dim;
  g.id = "steklov:" + std::to_string(n_order) + "(" + f.id + ")";
  auto base = std::make_shared<Signal>(f);
  const int n = n_order;
  g.direct = [base, n](const vecd& x) {
    const int d = base->dim;
    vecd y(d);
    cplx total{};
    for (int k = 1; k <= n; ++k) {
      const double c = ((k % 2 == 1) ? 1.0 : -1.0) * binomial(n, k);
      cplx integral{};
      if (d == 1) {
        auto h1 = [&](double t) {
          y[0] = x[0] + k * t;
          return base->eval(y) * detail::bspline(n, t);
        };
        integral = integrate_panels(h1, 0.0, double(n), 8, 2 * n);
      } else {
        auto outer = [&](double t0) {
          auto inner = [&](double t1) {
            y[0] = x[0] + k * t0;
            y[1] = x[1] + k * t1;
            return base->eval(y) * detail::bspline(n, t0) * detail::bspline(n, t1);
          };
          return integrate_panels(inner, 0.0, double(n), 8, 2 * n);
        };
        integral = integrate_panels(outer, 0.0, double(n), 8, 2 * n);
      }
      total += c * integral;
    }
    return total;
  };
  return g;
}

// ---- best band-limited approximation ------------------------------------------------

/// Surrogate for the best approximation by functions band-limited to
/// |xi| <= sigma: E(f, sigma) = ||f - V_sigma f||_{p,1/w} on the interior
/// box, where V_sigma multiplies the spectrum by a radial cutoff that is 1
/// for |xi| <= sigma/2 and 0 beyond sigma.
inline double best_approx_band(const GridSignal& fg, double sigma, double p, const Weight& w) {
  require(sigma > 0, "best_approx_band: sigma > 0");
  const double nyquist = double(fg.n) / (4.0 * fg.half_width);
  if (sigma > nyquist)
    throw config_error("best_approx_band: sigma exceeds the grid Nyquist frequency " +
                       detail::format_param(nyquist));
  GridSignal spec = spectrum(fg);
  std::vector<std::size_t> idx;
  vecd xi(fg.dim);
  for (std::size_t flat = 0; flat < spec.values.size(); ++flat) {
    spec.unindex(flat, idx);
    for (int l = 0; l < fg.dim; ++l) xi[l] = spec.coord(idx[l]);
    const double r = norm2(xi);
    spec.values[flat] *= 1.0 - detail::flat_top_profile(r, 0.5 * sigma, sigma);
  }
  GridSignal diff = inverse_spectrum(spec);
  return weighted_norm(diff, p, WeightMode::over_w, w, Region::interior);
}

// ---- spectral tail bound ---------------------------------------------------------

/// Right-hand side of the sampling tail estimate (without its constant):
/// |M^{-j}|^{q gamma} int_{|M^{-j} xi| >= delta/2} |xi|^{q gamma}
/// |F(f / w)(xi)|^q d xi, by grid quadrature on f's grid. Requires gamma >
/// d/p with p the exponent conjugate to q; errors out when the integrand has
/// not decayed by the grid's spectral edge.
inline double tail_bound(const GridSignal& fg, const vecd& w_samples, const DilationMatrix& M,
                         int j, double gamma, double q, double delta) {
  require(q >= 1.0, "tail_bound: q >= 1");
  require(delta > 0, "tail_bound: delta > 0");
  require(w_samples.size() == fg.values.size(), "tail_bound: weight sample size mismatch");
  const double d = double(fg.dim);
  const double p_conj = q > 1.0 ? q / (q - 1.0) : std::numeric_limits<double>::infinity();
  if (!(gamma > d / p_conj))
    throw hypothesis_error("tail_bound: requires gamma > d/p (p conjugate to q); got gamma = " +
                           detail::format_param(gamma));
  GridSignal ratio = fg;
  for (std::size_t i = 0; i < ratio.values.size(); ++i) ratio.values[i] /= w_samples[i];
  GridSignal spec = spectrum(ratio);

  const vecd lam_inv_j = M.power(-j);
  double cell = 1.0;
  for (int l = 0; l < fg.dim; ++l) cell *= spec.step();
  std::vector<std::size_t> idx;
  vecd xi(fg.dim);
  double total = 0.0, edge = 0.0;
  const double edge_lo = spec.half_width * 0.75;
  for (std::size_t flat = 0; flat < spec.values.size(); ++flat) {
    spec.unindex(flat, idx);
    double r2 = 0.0, rm2 = 0.0, rinf = 0.0;
    for (int l = 0; l < fg.dim; ++l) {
      xi[l] = spec.coord(idx[l]);
      r2 += sqr(xi[l]);
      rm2 += sqr(lam_inv_j[l] * xi[l]);
      rinf = std::max(rinf, std::abs(xi[l]));
    }
    if (std::sqrt(rm2) < 0.5 * delta) continue;
    const double term =
        std::pow(std::sqrt(r2), q * gamma) * std::pow(std::abs(spec.values[flat]), q) * cell;
    total += term;
    if (rinf >= edge_lo) edge += term;
  }
  if (total <= 0.0) return 0.0;
  // The outer 25% of the spectral box should carry a small share of the mass;
  // otherwise the integral is unresolved on this grid.
  const double share = edge / total;
  if (share > 0.2)
    throw numerical_error("tail_bound: " + detail::format_param(100.0 * share) +
                          "% of the integrand mass sits at the spectral grid edge; "
                          "the tail integral is unresolved at this resolution");
  return std::pow(M.op_norm_inverse_power(j), q * gamma) * total;
}

inline double tail_bound(const GridSignal& fg, const Weight& w, const DilationMatrix& M, int j,
                         double gamma, double q, double delta) {
  return tail_bound(fg, weight_grid_samples(fg, w), M, j, gamma, q, delta);
}

// ---- error curves and rate fitting ----------------------------------------------------

enum class TheoryCase { None, Saturated, Critical, Smooth };

struct RateReport {
  std::vector<int> j_values;
  vecd errors;
  double fitted_slope = 0.0;   // s in e_j ~ C theta^{-j s}
  double intercept = 0.0;      // log C
  double r2 = 0.0;
  bool with_log_factor = false;
  bool degenerate = false;     // an error hit the numerical floor
  TheoryCase theory_case = TheoryCase::None;
  double theory_slope = 0.0;
  double ratio_stability = 0.0;  // max/min of errors[i]/bounds[i], when bounds were supplied
};

/// Least squares of log e_j against -j log(theta); with_log_factor fits the
/// model e_j ~ C sqrt(j) theta^{-j s} instead (the critical-case shape).
inline RateReport fit_rate(const std::vector<int>& j_values, const vecd& errors, double theta,
                           bool with_log_factor = false) {
  require(j_values.size() == errors.size() && errors.size() >= 2,
          "fit_rate: need matching j/error lists, length >= 2");
  require(theta > 1.0, "fit_rate: theta > 1");
  RateReport rep;
  rep.j_values = j_values;
  rep.errors = errors;
  rep.with_log_factor = with_log_factor;
  const std::size_t m = errors.size();
  vecd xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(errors[i] > 1e-14)) {
      rep.degenerate = true;
      return rep;
    }
    xs[i] = -double(j_values[i]) * std::log(theta);
    ys[i] = std::log(errors[i]);
    if (with_log_factor && j_values[i] > 0) ys[i] -= 0.5 * std::log(double(j_values[i]));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(m);
  my /= double(m);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += sqr(xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += sqr(ys[i] - my);
  }
  require(sxx > 0, "fit_rate: need at least two distinct levels");
  rep.fitted_slope = sxy / sxx;
  rep.intercept = my - rep.fitted_slope * mx;
  rep.r2 = syy > 0 ? sqr(sxy) / (sxx * syy) : 1.0;
  return rep;
}

/// max/min of errors[i]/bounds[i]; infinity when a bound vanishes.
inline double ratio_stability(const vecd& errors, const vecd& bounds) {
  require(errors.size() == bounds.size() && !errors.empty(), "ratio_stability: size mismatch");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (bounds[i] <= 0.0) return std::numeric_limits<double>::infinity();
    const double r = errors[i] / bounds[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi / lo;
}

struct CurvePoint {
  int j = 0;
  double error = 0.0;
  double tail_residual = 0.0;
  double boundary_coeff_max = 0.0;
  bool under_truncated = false;
};

/// ||f - Q_j f||_{p,1/w} on the interior box for each level in j_list.
inline std::vector<CurvePoint> error_curve(const Signal& f, const BandLimitedKernel& kernel,
                                           const DualFunctional& dual, const DilationMatrix& M,
                                           const std::vector<int>& j_list, double p,
                                           const Weight& w, std::size_t grid_n, double grid_half,
                                           double tail_tol = 1e-10) {
  const GridSignal fg = sample_to_grid(f, grid_half, grid_n);
  const vecd wsamp = weight_grid_samples(fg, w);
  std::vector<CurvePoint> out;
  for (int j : j_list) {
    OperatorApplication app = apply_operator(f, kernel, dual, M, j, grid_n, grid_half, tail_tol);
    GridSignal diff = grid_subtract(fg, app.approximation);
    CurvePoint pt;
    pt.j = j;
    pt.error = weighted_norm(diff, p, WeightMode::over_w, wsamp, Region::interior);
    pt.tail_residual = app.tail_residual;
    pt.boundary_coeff_max = app.boundary_coeff_max;
    pt.under_truncated = app.coeffs.under_truncated;
    out.push_back(pt);
  }
  return out;
}

}  // namespace qproj
