#pragma once

// Weights for the weighted-L_p machinery. A weight carries its dominant
// companion w* with w(x+y) <= w*(x) w(y) and w*(x) <= c_w (1+|x|^2)^{alpha/2}.
// Band-limited weights are built as w = v * V with a nonnegative band-limited
// mollifier kernel V, so Fw = Fv FV is compactly supported. Rectangle-family
// Muckenhoupt constants audit the A_p side conditions.

#include <memory>

#include "qproj/dilation.hpp"
#include "qproj/kernels.hpp"

namespace qproj {

enum class WeightKind { Unit, Polynomial, BandLimitedConv };

struct Weight {
  std::string id;
  WeightKind kind = WeightKind::Unit;
  int dim = 1;
  double alpha = 0.0;  // growth exponent of the dominant bound
  double c_w = 1.0;    // w*(x) <= c_w (1+|x|^2)^{alpha/2}
  std::function<double(const vecd&)> eval;      // w(x) >= 1
  std::function<double(const vecd&)> dominant;  // w*(x)
  bool band_limited = false;
  double spectrum_radius = 0.0;  // per-axis radius of supp Fw when band_limited
  // Band-limited construction metadata.
  double truncation_residual = 0.0;
  double l1_dominant = 0.0;      // ||V||_{1,v*}
  double l1_inv_dominant = 0.0;  // ||V||_{1,1/v*}

  double operator()(const vecd& x) const { return eval(x); }
};

inline Weight make_unit_weight(int dim) {
  Weight w;
  w.id = "unit";
  w.kind = WeightKind::Unit;
  w.dim = dim;
  w.band_limited = true;  // spectrum is a point mass at the origin
  w.eval = [](const vecd&) { return 1.0; };
  w.dominant = [](const vecd&) { return 1.0; };
  return w;
}

/// w_a(x) = (1+|x|^2)^{a/2} with dominant 2^{a/2} w_a and c_w = 2^{a/2}.
inline Weight make_polynomial_weight(int dim, double alpha) {
  require(alpha > 0.0, "polynomial weight: alpha > 0");
  Weight w;
  w.id = "poly:" + detail::format_param(alpha);
  w.kind = WeightKind::Polynomial;
  w.dim = dim;
  w.alpha = alpha;
  w.c_w = std::pow(2.0, alpha / 2.0);
  w.eval = [alpha](const vecd& x) { return std::pow(1.0 + sqr(norm2(x)), alpha / 2.0); };
  const double cw = w.c_w;
  w.dominant = [alpha, cw](const vecd& x) {
    return cw * std::pow(1.0 + sqr(norm2(x)), alpha / 2.0);
  };
  return w;
}

/// Pointwise map max(|x|, eps)^sigma for Muckenhoupt experiments (not a class
/// member: it may dip below 1 and is not translation-dominated).
inline std::function<double(const vecd&)> power_map(double sigma, double eps = 0.0) {
  require(eps >= 0.0, "power map: eps >= 0");
  return [sigma, eps](const vecd& x) { return std::pow(std::max(norm2(x), eps), sigma); };
}

// ---- band-limited weights ---------------------------------------------------

/// w = v * V for a nonnegative mollifier kernel V with integral 1. The
/// convolution is truncated where V's envelope falls below 1e-12 of its peak;
/// the result keeps v's dominant (V >= 0, integral 1) and inherits V's
/// spectral support. Verifies V >= 0, the integral normalization, and the
/// two-sided bound v(x) ||V||_{1,1/v*} <= w(x) <= v(x) ||V||_{1,v*}.
inline Weight make_bandlimited_weight(const Weight& v, const BandLimitedKernel& V,
                                      int nodes_per_unit = 8) {
  require(v.dim == V.dim(), "bandlimited weight: dimension mismatch");
  const int dim = v.dim;

  // Nonnegativity on probe grids: fine near the origin, coarse out to the
  // table edge (tolerating table roundoff).
  double peak = 0.0, most_negative = 0.0;
  const double edge = V.table_half_width();
  for (int i = -400; i <= 400; ++i) {
    for (double t : {0.05 * i, edge * i / 400.0}) {
      const double val = V.eval1(t).real();
      peak = std::max(peak, val);
      most_negative = std::min(most_negative, val);
    }
  }
  require(peak > 0.0, "bandlimited weight: degenerate mollifier");
  if (most_negative < -1e-9 * peak)
    throw config_error("bandlimited weight: mollifier has negative values");

  // Truncation radius: measured table decay below 1e-12 of the peak. The
  // dropped mass per axis combines the measured tail on the table with the
  // certified envelope bound beyond it.
  if (V.slow_decay()) {
    throw numerical_error(
        "bandlimited weight: mollifier decay too slow to certify convolution truncation");
  }
  const double T = std::ceil(V.decay_radius(1e-12));
  const double resid_axis = std::min(V.measured_tail_integral(T), V.tail_mass(T));

  auto v1 = [Vk = V](double t) { return std::max(0.0, Vk.eval1(t).real()); };
  auto veval = v.eval;
  const int panels = 2 * int(std::ceil(T));
  const int npu = nodes_per_unit;

  std::function<double(const vecd&)> eval;
  if (dim == 1) {
    eval = [veval, v1, T, panels, npu](const vecd& x) {
      auto f = [&](double y) { return veval({x[0] - y}) * v1(y); };
      return integrate_panels(f, -T, T, npu, panels);
    };
  } else {
    eval = [veval, v1, T, panels, npu](const vecd& x) {
      auto inner = [&](double y0) {
        auto f1 = [&](double y1) { return veval({x[0] - y0, x[1] - y1}) * v1(y0) * v1(y1); };
        return integrate_panels(f1, -T, T, npu, panels);
      };
      return integrate_panels(inner, -T, T, npu, panels);
    };
  }

  Weight w;
  w.id = "bl(" + v.id + "*" + V.id() + ")";
  w.kind = WeightKind::BandLimitedConv;
  w.dim = dim;
  w.alpha = v.alpha;
  w.c_w = v.c_w;
  w.band_limited = true;
  w.spectrum_radius = V.support();
  w.eval = std::move(eval);
  w.dominant = v.dominant;
  w.truncation_residual = 2.0 * dim * resid_axis;

  // ||V||_{1,v*^{+-1}} by the same panel rule (1-D profile, tensorized).
  auto vdom = v.dominant;
  auto l1_with = [&](bool inverse) {
    if (dim == 1) {
      auto f = [&](double y) {
        const double d0 = vdom({y});
        return v1(y) * (inverse ? 1.0 / d0 : d0);
      };
      return integrate_panels(f, -T, T, npu, panels);
    }
    auto outer = [&](double y0) {
      auto f1 = [&](double y1) {
        const double d0 = vdom({y0, y1});
        return v1(y0) * v1(y1) * (inverse ? 1.0 / d0 : d0);
      };
      return integrate_panels(f1, -T, T, npu, panels);
    };
    return integrate_panels(outer, -T, T, npu, panels);
  };
  w.l1_dominant = l1_with(false);
  w.l1_inv_dominant = l1_with(true);

  // Two-sided bound spot check.
  vecd x(dim, 0.0);
  for (double probe : {0.0, 1.0, 3.0, 8.0}) {
    x[0] = probe;
    const double wv = w.eval(x), vv = v.eval(x);
    if (wv < vv * w.l1_inv_dominant * (1.0 - 1e-6) || wv > vv * w.l1_dominant * (1.0 + 1e-6))
      throw numerical_error("bandlimited weight: two-sided convolution bound violated at probe point");
  }
  if (!(w.truncation_residual < 1e-6))
    throw numerical_error("bandlimited weight: truncation residual " +
                          detail::format_param(w.truncation_residual) + " above tolerance");
  return w;
}

// ---- Muckenhoupt rectangle constants -----------------------------------------

struct Rect {
  vecd lo, hi;
  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

namespace detail {
/// Rectangle mean with per-axis grading toward the hyperplanes x_i = 0
/// (resolves |x|^sigma singularities without losing smooth integrands).
inline double rect_mean(const std::function<double(const vecd&)>& f, const Rect& r, int n) {
  const int dim = int(r.lo.size());
  if (dim == 1) {
    auto g = [&](double x) { return f({x}); };
    return integrate_graded(g, r.lo[0], r.hi[0], 0.0, n) / (r.hi[0] - r.lo[0]);
  }
  auto outer = [&](double x0) {
    auto g = [&](double x1) { return f({x0, x1}); };
    return integrate_graded(g, r.lo[1], r.hi[1], 0.0, n);
  };
  return integrate_graded(outer, r.lo[0], r.hi[0], 0.0, n) / r.volume();
}
}  // namespace detail

struct ApResult {
  double value = 0.0;        // refined (quad_pts doubled) family maximum
  double coarse = 0.0;       // base-resolution family maximum
  bool converged = false;    // moved < 1% under doubling
  std::size_t argmax = 0;    // index of the extremal rectangle
  vecd per_rect;             // refined constant per rectangle
};

/// max over the family of (mean_R w)(mean_R w^{-1/(p-1)})^{p-1}, tensor
/// Gauss-Legendre with quad_pts per axis and a doubling convergence check.
inline ApResult ap_rectangle_constant(const std::function<double(const vecd&)>& w_pow, double p,
                                      const std::vector<Rect>& rects, int quad_pts = 64) {
  require(p > 1.0, "ap_rectangle_constant: p > 1");
  require(!rects.empty(), "ap_rectangle_constant: empty rectangle family");
  auto dual = [&w_pow, p](const vecd& x) { return std::pow(w_pow(x), -1.0 / (p - 1.0)); };
  auto one = [&](const Rect& r, int n) {
    const double mw = detail::rect_mean(w_pow, r, n);
    const double md = detail::rect_mean(dual, r, n);
    return mw * std::pow(md, p - 1.0);
  };
  ApResult res;
  res.per_rect.resize(rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const double c = one(rects[i], quad_pts);
    const double f = one(rects[i], 2 * quad_pts);
    if (!std::isfinite(c) || !std::isfinite(f))
      throw numerical_error("ap_rectangle_constant: non-finite average on rectangle " +
                            std::to_string(i));
    res.per_rect[i] = f;
    if (f > res.value) {
      res.value = f;
      res.argmax = i;
    }
    res.coarse = std::max(res.coarse, c);
  }
  res.converged = std::abs(res.value - res.coarse) <= 0.01 * std::abs(res.value);
  return res;
}

/// One-variable constant of a multivariate map: all coordinates except `axis`
/// frozen, intervals in the free variable.
inline ApResult ap_rectangle_per_variable(const std::function<double(const vecd&)>& w_pow, double p,
                                          int axis, const vecd& frozen,
                                          const std::vector<std::pair<double, double>>& intervals,
                                          int quad_pts = 64) {
  auto w1 = [&w_pow, axis, frozen](const vecd& x) {
    vecd full = frozen;
    full.insert(full.begin() + axis, x[0]);
    return w_pow(full);
  };
  std::vector<Rect> rects;
  for (const auto& [lo, hi] : intervals) rects.push_back(Rect{{lo}, {hi}});
  return ap_rectangle_constant(w1, p, rects, quad_pts);
}

/// Default audit family: dyadic half-widths 2^k, k = -4..6, centered at the
/// origin and on a coarse lattice.
inline std::vector<Rect> default_rect_family(int dim) {
  std::vector<vecd> centers;
  centers.push_back(vecd(dim, 0.0));
  for (int l = 0; l < dim; ++l)
    for (double c : {2.0, -2.0, 8.0}) {
      vecd v(dim, 0.0);
      v[l] = c;
      centers.push_back(v);
    }
  std::vector<Rect> out;
  for (int k = -4; k <= 6; ++k) {
    const double half = std::pow(2.0, k);
    for (const auto& c : centers) {
      Rect r;
      for (int l = 0; l < dim; ++l) {
        r.lo.push_back(c[l] - half);
        r.hi.push_back(c[l] + half);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Rectangles M^{-j}([-base,base]^d) + center for j in [jmin, jmax].
inline std::vector<Rect> dyadic_rect_family(const DilationMatrix& M, int jmin, int jmax, double base,
                                            const std::vector<vecd>& centers) {
  std::vector<Rect> out;
  const int d = M.dim();
  for (int j = jmin; j <= jmax; ++j) {
    for (const auto& c : centers) {
      require(int(c.size()) == d, "rect family: center dimension mismatch");
      Rect r;
      r.lo.resize(d);
      r.hi.resize(d);
      for (int i = 0; i < d; ++i) {
        const double half = base * std::pow(std::abs(M.diag()[i]), double(-j));
        r.lo[i] = c[i] - half;
        r.hi[i] = c[i] + half;
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---- class membership audits ---------------------------------------------------

struct WeightMembershipReport {
  double evenness_defect = 0.0;  // max |w(x)-w(-x)| / w(x)
  double submult_defect = 0.0;   // max positive part of w(x+y)/(w*(x) w(y)) - 1
  double dominant_defect = 0.0;  // max positive part of w*(x)/(c_w (1+|x|^2)^{alpha/2}) - 1
  bool pass = false;
  double tol = 0.0;
};

/// Samples the defining conditions of the weight class on a symmetric point
/// set: evenness, the dominant inequality w(x+y) <= w*(x) w(y), and the
/// polynomial bound on w*.
inline WeightMembershipReport check_w_alpha_membership(const Weight& w,
                                                       const std::vector<vecd>& grid,
                                                       double tol = 1e-12) {
  WeightMembershipReport rep;
  rep.tol = tol;
  vecd mx(w.dim), xy(w.dim);
  for (const auto& x : grid) {
    require(int(x.size()) == w.dim, "weight membership: grid dimension mismatch");
    const double wx = w.eval(x);
    require(wx > 0.0 && std::isfinite(wx), "weight membership: weight must be positive finite");
    for (int l = 0; l < w.dim; ++l) mx[l] = -x[l];
    rep.evenness_defect = std::max(rep.evenness_defect, std::abs(wx - w.eval(mx)) / wx);
    const double bound = w.c_w * std::pow(1.0 + sqr(norm2(x)), w.alpha / 2.0);
    rep.dominant_defect = std::max(rep.dominant_defect, w.dominant(x) / bound - 1.0);
  }
  for (const auto& x : grid)
    for (const auto& y : grid) {
      for (int l = 0; l < w.dim; ++l) xy[l] = x[l] + y[l];
      rep.submult_defect =
          std::max(rep.submult_defect, w.eval(xy) / (w.dominant(x) * w.eval(y)) - 1.0);
    }
  rep.submult_defect = std::max(rep.submult_defect, 0.0);
  rep.dominant_defect = std::max(rep.dominant_defect, 0.0);
  rep.pass = rep.evenness_defect <= tol && rep.submult_defect <= tol && rep.dominant_defect <= tol;
  return rep;
}

/// Deterministic symmetric sample set (lattice shells, closed under negation).
inline std::vector<vecd> symmetric_sample_grid(int dim, double radius, int per_axis) {
  require(per_axis >= 3 && per_axis % 2 == 1, "symmetric grid: odd per_axis >= 3");
  std::vector<vecd> out;
  const auto coord = [&](int i) { return -radius + 2.0 * radius * i / (per_axis - 1); };
  if (dim == 1) {
    for (int i = 0; i < per_axis; ++i) out.push_back({coord(i)});
  } else {
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j) out.push_back({coord(i), coord(j)});
  }
  return out;
}

/// Parses "unit" or "poly:<alpha>".
inline Weight weight_from_id(int dim, const std::string& id) {
  if (id == "unit" || id.empty()) return make_unit_weight(dim);
  if (id.rfind("poly:", 0) == 0) return make_polynomial_weight(dim, std::stod(id.substr(5)));
  throw config_error("unknown weight id: " + id);
}

/// Smallest sampled constant C' with w*(M^{-j}x) <= C' w*(x), j = 1..j_max.
inline double check_dilation_stability(const Weight& w, const DilationMatrix& M, int j_max,
                                       const std::vector<vecd>& grid) {
  require(w.dim == M.dim(), "dilation stability: dimension mismatch");
  double cprime = 0.0;
  for (int j = 1; j <= j_max; ++j)
    for (const auto& x : grid) {
      const double denom = w.dominant(x);
      cprime = std::max(cprime, w.dominant(M.apply(-j, x)) / denom);
    }
  return cprime;
}

}  // namespace qproj
