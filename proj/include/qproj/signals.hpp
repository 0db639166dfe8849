#pragma once

// Test signals. Separable signals carry a rank-structured spectrum
// f(x) = Re[ sum_r coef_r prod_l a_{r,l}(x_l) ] with per-axis spectral
// amplitudes A_{r,l}; this makes grid sampling and analysis-coefficient
// computation factor into 1-D integrals. Non-separable signals (weighted
// transform tables, trigonometric products) evaluate pointwise.

#include <array>
#include <memory>

#include "qproj/grid.hpp"
#include "qproj/quadrature.hpp"
#include "qproj/weights.hpp"

namespace qproj {

struct AxisFactor {
  std::function<cplx(double)> amplitude;  // A(xi), integrated over [-rho_axis, rho_axis]
  std::function<cplx(double)> space;      // optional closed form of int A(xi) e^{2 pi i x xi} d xi
};

struct SpectralTerm {
  double coef = 1.0;
  double band = -1.0;            // per-term amplitude support; < 0 means the signal's rho_axis
  std::vector<AxisFactor> axes;  // one per dimension
};

class Signal {
 public:
  std::string id;
  int dim = 1;
  std::vector<SpectralTerm> terms;
  double rho_axis = 0.0;   // per-axis amplitude support / effective radius
  bool exact_band = false; // amplitudes vanish identically outside rho_axis
  std::function<cplx(const vecd&)> direct;              // non-separable fallback
  std::function<double(double)> radial_base_spectrum;   // |Fg|(r) of the base layer, if meaningful
  double spectral_decay_a = -1.0;                       // decay exponent of the base layer, if known
  std::shared_ptr<const Weight> associated_weight;      // w when the signal is w * (base layer)
  int quad_nodes = 128;

  bool separable() const { return !terms.empty() && !direct; }

  /// Space factor a_{r,l}(x): closed form if present, else oscillation-aware
  /// Gauss-Legendre over the amplitude band.
  cplx axis_space(const SpectralTerm& t, int axis, double x) const {
    const AxisFactor& f = t.axes[axis];
    if (f.space) return f.space(x);
    const double b = t.band > 0.0 ? t.band : rho_axis;  // combinations keep per-part bands
    int n = quad_nodes + int(12.0 * b * std::abs(x));
    n = ((n + 31) / 32) * 32;
    auto g = [&](double xi) { return f.amplitude(xi) * std::polar(1.0, 2.0 * kPi * x * xi); };
    return integrate(g, -b, b, n);
  }

  cplx eval(const vecd& x) const {
    require(int(x.size()) == dim, "signal eval: dimension mismatch");
    if (direct) return direct(x);
    cplx s{};
    for (const auto& t : terms) {
      cplx p{t.coef, 0.0};
      for (int l = 0; l < dim; ++l) p *= axis_space(t, l, x[l]);
      s += p;
    }
    return cplx{s.real(), 0.0};
  }

  double eval_real(const vecd& x) const { return eval(x).real(); }
};

/// a_{r,l} evaluated on per-axis coordinate lists: result[r][l][i].
inline std::vector<std::vector<std::vector<cplx>>> eval_axis_factors(
    const Signal& f, const std::vector<vecd>& coords) {
  require(f.separable(), "eval_axis_factors: signal is not separable");
  require(int(coords.size()) == f.dim, "eval_axis_factors: need one coordinate list per axis");
  std::vector<std::vector<std::vector<cplx>>> out(f.terms.size());
  for (std::size_t r = 0; r < f.terms.size(); ++r) {
    out[r].resize(f.dim);
    for (int l = 0; l < f.dim; ++l) {
      out[r][l].resize(coords[l].size());
      for (std::size_t i = 0; i < coords[l].size(); ++i)
        out[r][l][i] = f.axis_space(f.terms[r], l, coords[l][i]);
    }
  }
  return out;
}

/// Samples a signal onto the uniform grid [-L,L)^d with N points per axis,
/// using the separable structure when available. Non-finite values abort with
/// the offending location.
inline GridSignal sample_to_grid(const Signal& f, double half_width, std::size_t n) {
  GridSignal g = make_grid(f.dim, n, half_width);
  if (!f.separable()) {
    vecd x(f.dim);
    if (f.dim == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        x[0] = g.coord(i);
        g.values[i] = f.eval(x);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        x[0] = g.coord(i);
        for (std::size_t j = 0; j < n; ++j) {
          x[1] = g.coord(j);
          g.values[i * n + j] = f.eval(x);
        }
      }
    }
    for (std::size_t i = 0; i < g.values.size(); ++i)
      if (!std::isfinite(g.values[i].real()) || !std::isfinite(g.values[i].imag())) {
        std::vector<std::size_t> idx;
        g.unindex(i, idx);
        std::string loc;
        for (std::size_t k = 0; k < idx.size(); ++k)
          loc += (k ? "," : "") + detail::format_param(g.coord(idx[k]));
        throw numerical_error("sample_to_grid: non-finite value of '" + f.id + "' at (" + loc + ")");
      }
    return g;
  }
  vecd coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = g.coord(i);
  const auto fac = eval_axis_factors(f, std::vector<vecd>(f.dim, coords));
  std::vector<double> acc(g.values.size(), 0.0);
  for (std::size_t r = 0; r < f.terms.size(); ++r) {
    const double c = f.terms[r].coef;
    if (f.dim == 1) {
      for (std::size_t i = 0; i < n; ++i) acc[i] += (c * fac[r][0][i]).real();
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          acc[i * n + j] += (c * fac[r][0][i] * fac[r][1][j]).real();
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i) g.values[i] = cplx{acc[i], 0.0};
  return g;
}

// ---- constructions ----------------------------------------------------------

/// amp * exp(-pi |x - c|^2 / sigma^2); spectrum is an explicit Gaussian, so
/// both sides have closed forms.
inline Signal make_gaussian(int dim, double amp, const vecd& center, double sigma) {
  require(int(center.size()) == dim, "gaussian: center dimension mismatch");
  require(sigma > 0 && amp != 0.0, "gaussian: need sigma > 0, amp != 0");
  Signal f;
  f.dim = dim;
  f.id = "gaussian:" + detail::format_param(amp) + ":" + detail::format_param(center[0]) + ":" +
         detail::format_param(sigma);
  f.rho_axis = 3.7 / sigma;  // exp(-pi (sigma rho)^2) ~ 2e-19 beyond this
  f.exact_band = false;
  SpectralTerm t;
  t.coef = amp;
  for (int l = 0; l < dim; ++l) {
    const double c = center[l];
    AxisFactor ax;
    ax.amplitude = [sigma, c](double xi) {
      return sigma * std::exp(-kPi * sqr(sigma * xi)) * std::polar(1.0, -2.0 * kPi * c * xi);
    };
    ax.space = [sigma, c](double x) { return cplx{std::exp(-kPi * sqr((x - c) / sigma)), 0.0}; };
    t.axes.push_back(std::move(ax));
  }
  f.terms.push_back(std::move(t));
  return f;
}

/// Random band-limited signal: rank-structured spectrum with per-axis
/// amplitudes bump(xi/rho_axis) P_{r,l}(xi), P a random cubic with complex
/// coefficients; normalized to peak magnitude ~1 near the origin.
inline Signal make_bandlimited_signal(int dim, double rho, std::uint64_t seed = 2026, int rank = 4) {
  require(rho > 0 && rank >= 1 && rank <= 8, "bandlimited signal: rho > 0, rank in [1,8]");
  Signal f;
  f.dim = dim;
  f.id = "bandlimited:" + detail::format_param(rho) + ":" + std::to_string(rank) + ":" +
         std::to_string(seed);
  f.rho_axis = rho / std::sqrt(double(dim));
  f.exact_band = true;
  Rng rng(seed);
  const double ra = f.rho_axis;
  for (int r = 0; r < rank; ++r) {
    SpectralTerm t;
    t.coef = 1.0 / rank;
    for (int l = 0; l < dim; ++l) {
      std::array<cplx, 4> c;
      for (auto& v : c) v = rng.complex_normal();
      AxisFactor ax;
      ax.amplitude = [c, ra](double xi) {
        const double u = xi / ra;
        const double b = bump_cinf(u);
        if (b == 0.0) return cplx{};
        return b * (c[0] + u * (c[1] + u * (c[2] + u * c[3])));
      };
      t.axes.push_back(std::move(ax));
    }
    f.terms.push_back(std::move(t));
  }
  // Deterministic normalization sweep.
  double peak = 0.0;
  vecd x(dim, 0.0);
  for (int i = -32; i <= 32; ++i) {
    x[0] = 0.25 * i;
    peak = std::max(peak, std::abs(f.eval(x)));
  }
  require(peak > 1e-12, "bandlimited signal: degenerate draw");
  for (auto& t : f.terms) t.coef /= peak;
  return f;
}

namespace detail {
inline std::shared_ptr<GridSignal> matern_table(int dim, double a) {
  const std::size_t n = (dim == 1) ? (std::size_t(1) << 14) : (std::size_t(1) << 10);
  const double L = (dim == 1) ? 64.0 : 32.0;
  GridSignal spec = make_grid(dim, n, double(n) / (4.0 * L));
  const double expo = -0.5 * (dim + a);
  std::vector<std::size_t> idx(dim);
  vecd xi(dim);
  for (std::size_t flat = 0; flat < spec.values.size(); ++flat) {
    spec.unindex(flat, idx);
    for (int l = 0; l < dim; ++l) xi[l] = spec.coord(idx[l]);
    spec.values[flat] = cplx{std::pow(1.0 + sqr(norm2(xi)), expo), 0.0};
  }
  auto table = std::make_shared<GridSignal>(inverse_spectrum(spec));
  for (auto& v : table->values) v = cplx{v.real(), 0.0};
  return table;
}
}  // namespace detail

/// f = w * g where Fg(xi) = (1 + |xi|^2)^{-(dim+a)/2}; g is realized as an
/// interpolated transform table, and the signal is defined as that
/// interpolant (so analysis and synthesis see the same function).
inline Signal make_matern_like(int dim, double a, const Weight& w) {
  require(a > 0, "matern signal: a > 0");
  require(w.dim == dim, "matern signal: weight dimension mismatch");
  Signal f;
  f.dim = dim;
  f.id = "matern:" + detail::format_param(a);
  auto table = detail::matern_table(dim, a);
  const int ord = (dim == 1) ? 6 : 4;
  auto weval = w.eval;
  f.direct = [table, weval, ord](const vecd& x) {
    return cplx{weval(x) * interpolate(*table, x, ord).real(), 0.0};
  };
  const double expo = -0.5 * (dim + a);
  f.radial_base_spectrum = [expo](double r) { return std::pow(1.0 + r * r, expo); };
  f.spectral_decay_a = a;
  f.associated_weight = std::make_shared<Weight>(w);
  return f;
}

/// Smooth bounded product of a few incommensurate cosines per axis.
inline Signal make_trig_poly(int dim) {
  Signal f;
  f.dim = dim;
  f.id = "trig";
  f.direct = [dim](const vecd& x) {
    double v = 1.0;
    for (int l = 0; l < dim; ++l) {
      const double t = x[l];
      v *= 0.6 + 0.3 * std::cos(2.0 * kPi * 0.05 * t + 0.4) +
           0.25 * std::cos(2.0 * kPi * 0.11 * t - 1.1) +
           0.15 * std::cos(2.0 * kPi * 0.23 * t + 2.2);
    }
    return cplx{v, 0.0};
  };
  return f;
}

/// Pointwise product w(x) f(x); loses any separable structure.
inline Signal make_weighted_product(const Weight& w, const Signal& s) {
  require(w.dim == s.dim, "weighted product: dimension mismatch");
  Signal f;
  f.dim = s.dim;
  f.id = "wprod(" + w.id + "," + s.id + ")";
  auto weval = w.eval;
  auto base = std::make_shared<Signal>(s);
  f.direct = [weval, base](const vecd& x) { return weval(x) * base->eval(x); };
  return f;
}

/// Linear combination with real coefficients; merges rank structure when all
/// parts are separable.
inline Signal make_combination(const std::vector<std::pair<double, Signal>>& parts) {
  require(!parts.empty(), "combination: empty");
  const int dim = parts[0].second.dim;
  bool all_sep = true;
  for (const auto& [c, s] : parts) {
    require(s.dim == dim, "combination: dimension mismatch");
    (void)c;
    all_sep = all_sep && s.separable();
  }
  Signal f;
  f.dim = dim;
  f.id = "combo";
  if (all_sep) {
    f.exact_band = true;
    for (const auto& [c, s] : parts) {
      f.rho_axis = std::max(f.rho_axis, s.rho_axis);
      f.exact_band = f.exact_band && s.exact_band;
      f.quad_nodes = std::max(f.quad_nodes, s.quad_nodes);
      for (auto t : s.terms) {
        t.coef *= c;
        if (t.band <= 0.0) t.band = s.rho_axis;  // keep the part's own integration band
        f.terms.push_back(std::move(t));
      }
    }
    return f;
  }
  auto copies = std::make_shared<std::vector<std::pair<double, Signal>>>(parts);
  f.direct = [copies](const vecd& x) {
    cplx v{};
    for (const auto& [c, s] : *copies) v += c * s.eval(x);
    return v;
  };
  return f;
}

/// "gaussian[:amp:center:sigma]" | "bandlimited:rho[:seed[:rank]]" |
/// "matern:a" | "trig". The weight argument only feeds matern-like signals.
inline Signal signal_from_id(int dim, const std::string& id, const Weight& w) {
  auto parts = [&] {
    std::vector<std::string> p;
    std::stringstream ss(id);
    std::string tok;
    while (std::getline(ss, tok, ':')) p.push_back(tok);
    return p;
  }();
  try {
    if (parts.size() == 1 && parts[0] == "gaussian")
      return make_gaussian(dim, 1.0, vecd(dim, 0.0), 1.0);
    if (parts.size() == 4 && parts[0] == "gaussian")
      return make_gaussian(dim, std::stod(parts[1]), vecd(dim, std::stod(parts[2])),
                           std::stod(parts[3]));
    if (parts.size() == 2 && parts[0] == "bandlimited")
      return make_bandlimited_signal(dim, std::stod(parts[1]));
    if (parts.size() == 3 && parts[0] == "bandlimited")
      return make_bandlimited_signal(dim, std::stod(parts[1]), std::stoull(parts[2]));
    if (parts.size() == 4 && parts[0] == "bandlimited")
      return make_bandlimited_signal(dim, std::stod(parts[1]), std::stoull(parts[2]),
                                     std::stoi(parts[3]));
    if (parts.size() == 2 && parts[0] == "matern") return make_matern_like(dim, std::stod(parts[1]), w);
    if (parts.size() == 1 && parts[0] == "trig") return make_trig_poly(dim);
  } catch (const std::invalid_argument&) {
    throw config_error("signal_from_id: malformed parameters in '" + id + "'");
  }
  throw config_error("signal_from_id: unknown signal id '" + id + "'");
}

}  // namespace qproj
