#pragma once

// Band-limited generator kernels phi(x) = prod_l phi1(x_l) where phi1 is the
// inverse transform of a compactly supported 1-D spectral profile theta1.
// All built-in constructions are tensor products, so evaluation in any
// dimension reduces to one shared 1-D table.
//
// Duals: Dirac (point evaluation, spectrum 1), BoxAverage (indicator of
// [0,1]^d, spectrum prod e^{-pi i xi} sinc(xi)), or an explicit band-limited
// function.

#include <limits>
#include <optional>
#include <sstream>

#include "qproj/grid.hpp"
#include "qproj/quadrature.hpp"

namespace qproj {

/// 1-D spectral profile theta1 with declared structure.
struct KernelProfile {
  std::function<cplx(double)> theta;  // theta1(xi); must vanish for |xi| >= support
  double support = 0.5;               // b: supp theta1 in [-b, b]
  double flat_radius = 0.0;           // theta1 == 1 on |xi| <= flat_radius (0 if none)
  double smooth_radius = 1e9;         // theta1 smooth on |xi| < smooth_radius (FD stencils stay inside)
  bool real_even = true;              // real even profile => real even phi1
};

namespace detail {
constexpr double kTableHalfWidth = 64.0;   // per-axis table domain [-64, 64]
constexpr std::size_t kTableSize = 1 << 14;
constexpr double kEnvelopeOrder = 8.0;     // |phi1(x)| <= C (1+|x|)^{-8} for fast-decay kernels
}  // namespace detail

class BandLimitedKernel {
 public:
  enum class EvalMode { ClosedForm, FftTable };

  BandLimitedKernel() = default;

  /// Table-backed construction (all smooth-spectrum kernels).
  BandLimitedKernel(int dim, KernelProfile prof, std::string id, int weak_order)
      : dim_(dim), prof_(std::move(prof)), id_(std::move(id)), mode_(EvalMode::FftTable),
        weak_order_(weak_order) {
    require(dim_ >= 1 && dim_ <= 2, "kernel: dim must be 1 or 2");
    // Support < 1 is required for quasi-projection use, but mollifier spectra
    // (autocorrelations) may reach 2; the operator layer re-checks its bound.
    require(prof_.support > 0 && prof_.support < 2.0, "kernel: spectral support must sit inside (-2,2)");
    build_table();
  }

  /// Closed-form construction (sinc).
  BandLimitedKernel(int dim, KernelProfile prof, std::string id, int weak_order,
                    std::function<double(double)> closed_form, double env_c, double env_n, bool slow)
      : dim_(dim), prof_(std::move(prof)), id_(std::move(id)), mode_(EvalMode::ClosedForm),
        weak_order_(weak_order), closed_(std::move(closed_form)), env_c_(env_c), env_n_(env_n),
        slow_decay_(slow) {}

  int dim() const { return dim_; }
  const std::string& id() const { return id_; }
  EvalMode eval_mode() const { return mode_; }
  double support() const { return prof_.support; }
  double flat_radius() const { return prof_.flat_radius; }
  double smooth_radius() const { return prof_.smooth_radius; }
  int weak_order() const { return weak_order_; }  // -1: not applicable / infinite
  bool slow_decay() const { return slow_decay_; }
  bool real_valued() const { return prof_.real_even; }

  cplx spectrum1(double xi) const { return std::abs(xi) >= prof_.support ? cplx{} : prof_.theta(xi); }

  cplx spectrum(const vecd& xi) const {
    require(int(xi.size()) == dim_, "kernel spectrum: dimension mismatch");
    cplx s{1.0, 0.0};
    for (double v : xi) s *= spectrum1(v);
    return s;
  }

  /// phi1(x) = integral of theta1(xi) e^{2 pi i x xi} d xi.
  cplx eval1(double x) const {
    if (mode_ == EvalMode::ClosedForm) return cplx{closed_(x), 0.0};
    return interpolate(table_, {x}, 6);
  }

  cplx eval(const vecd& x) const {
    require(int(x.size()) == dim_, "kernel eval: dimension mismatch");
    cplx s{1.0, 0.0};
    for (double v : x) s *= eval1(v);
    return s;
  }

  /// Per-axis decay bound: |phi1(x)| <= envelope1(|x|).
  double envelope1(double t) const {
    t = std::abs(t);
    if (slow_decay_) return env_c_ / std::max(1.0, t);
    return env_c_ * std::pow(1.0 + t, -env_n_);
  }

  /// Upper bound on sum_{|k| > R, k integer} envelope1(k) (1-D lattice tail).
  double tail_mass(double R) const {
    if (slow_decay_) return std::numeric_limits<double>::infinity();
    // sum_{k>R} C (1+k)^{-n} <= C (1+R)^{1-n}/(n-1); both signs.
    return 2.0 * env_c_ * std::pow(1.0 + R, 1.0 - env_n_) / (env_n_ - 1.0);
  }

  /// Smallest per-axis radius R with tail_mass(R) <= tol, capped at the table
  /// edge. certified=false when the cap bites (slow kernels).
  struct Radius {
    double value;
    bool certified;
    double residual;  // tail_mass at the returned radius (inf if slow)
  };
  Radius effective_radius(double tol) const {
    const double cap = (mode_ == EvalMode::ClosedForm) ? 4096.0 : table_.half_width - 1.0;
    if (slow_decay_) return {cap, false, std::numeric_limits<double>::infinity()};
    double lo = 1.0;
    while (lo < cap && tail_mass(lo) > tol) lo += 1.0;
    const double res = tail_mass(lo);
    return {lo, res <= tol, res};
  }

  /// Smallest radius beyond which every table sample is below rel_tol times
  /// the peak (a measured width, used for convolution windows; certified
  /// truncation bounds still come from tail_mass).
  double decay_radius(double rel_tol) const {
    if (mode_ == EvalMode::ClosedForm) {
      double t = 1.0;
      const double peak = std::abs(closed_(0.0));
      while (t < 4096.0 && envelope1(t) > rel_tol * peak) t += 1.0;
      return t;
    }
    double peak = 0.0;
    for (const auto& v : table_.values) peak = std::max(peak, std::abs(v));
    const std::size_t mid = table_.n / 2;
    double radius = table_.half_width;
    // Walk inward from the edge over the suffix maximum.
    double suffix = 0.0;
    std::size_t i = table_.n;
    std::vector<double> keep(table_.n - mid, 0.0);
    while (i-- > mid) {
      suffix = std::max(suffix, std::abs(table_.values[i]));
      keep[i - mid] = suffix;
    }
    for (std::size_t k = mid; k < table_.n; ++k) {
      if (keep[k - mid] <= rel_tol * peak) {
        radius = table_.coord(k);
        break;
      }
    }
    return std::max(1.0, radius);
  }

  /// Measured mass of |phi1| on [T, table edge] plus the certified envelope
  /// tail beyond the table (one-sided; integral scale, trapezoid rule).
  double measured_tail_integral(double T) const {
    if (mode_ == EvalMode::ClosedForm) return tail_mass(T) / 2.0;
    const double h = table_.step();
    double s = 0.0;
    for (std::size_t i = 0; i < table_.n; ++i) {
      const double t = table_.coord(i);
      if (t < T) continue;
      const double wgt = (i + 1 == table_.n || t == T) ? 0.5 : 1.0;
      s += wgt * std::abs(table_.values[i]);
    }
    return s * h + tail_mass(table_.half_width - 1.0) / 2.0;
  }

  double table_half_width() const {
    return mode_ == EvalMode::ClosedForm ? 4096.0 : table_.half_width;
  }
  const GridSignal& table() const { return table_; }
  double envelope_constant() const { return env_c_; }
  double envelope_order() const { return env_n_; }

 private:
  void build_table() {
    using namespace detail;
    // Narrow spectral support means wide spatial extent: scale the table
    // half-width so the profile is always sampled by >= 128 spectral nodes
    // and the aliasing distance stays many spatial scales out.
    double L = kTableHalfWidth;
    if (prof_.support < 0.5) L = std::min(1024.0, kTableHalfWidth * (0.5 / prof_.support));
    // Sample theta1 on the dual grid of the target space table and inverse
    // transform; aliasing = periodization of phi1 at distance 2L, negligible
    // for fast-decay kernels.
    GridSignal spec = make_grid(1, kTableSize, double(kTableSize) / (4.0 * L));
    for (std::size_t i = 0; i < spec.n; ++i) spec.values[i] = spectrum1(spec.coord(i));
    table_ = inverse_spectrum(spec);
    if (prof_.real_even)
      for (auto& v : table_.values) v = cplx{v.real(), 0.0};
    // Calibrate the decay envelope on the table and double it.
    env_n_ = kEnvelopeOrder;
    double c = 0.0;
    for (std::size_t i = 0; i < table_.n; ++i) {
      const double t = std::abs(table_.coord(i));
      c = std::max(c, std::abs(table_.values[i]) * std::pow(1.0 + t, env_n_));
    }
    env_c_ = 2.0 * c;
  }

  int dim_ = 1;
  KernelProfile prof_;
  std::string id_;
  EvalMode mode_ = EvalMode::FftTable;
  int weak_order_ = -1;
  std::function<double(double)> closed_;
  GridSignal table_;
  double env_c_ = 0.0, env_n_ = detail::kEnvelopeOrder;
  bool slow_decay_ = false;
};

// ---- constructions ------------------------------------------------------

/// sinc tensor: theta = indicator of [-1/2,1/2]^d. Slow (1/x) decay: usable
/// for spectral checks, excluded from synthesis presets.
inline BandLimitedKernel make_sinc_tensor(int dim) {
  KernelProfile p;
  p.theta = [](double xi) { return cplx{std::abs(xi) < 0.5 ? 1.0 : 0.0, 0.0}; };
  p.support = 0.5;
  p.flat_radius = 0.5;       // identically 1 strictly inside the support
  p.smooth_radius = 0.4999;  // discontinuity at |xi| = 1/2
  auto closed = [](double x) {
    if (x == 0.0) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
  };
  return BandLimitedKernel(dim, p, "sinc", -1, closed, 1.0 / kPi, 1.0, /*slow=*/true);
}

namespace detail {
/// Meyer transition polynomial nu(t) = t^4(35 - 84 t + 70 t^2 - 20 t^3);
/// nu(t) + nu(1-t) = 1.
inline double meyer_nu(double t) {
  if (t <= 0) return 0.0;
  if (t >= 1) return 1.0;
  return t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}
}  // namespace detail

/// Meyer scaling profile: 1 on |xi|<=1/3, cos((pi/2) nu(3|xi|-1)) on
/// [1/3,2/3], 0 beyond. smooth=true swaps nu for the C^inf smoothstep (the
/// complementary identity, hence orthonormality, is preserved).
inline BandLimitedKernel make_meyer_scaling(int dim, bool smooth_transition = false) {
  KernelProfile p;
  const bool sm = smooth_transition;
  p.theta = [sm](double xi) {
    const double a = std::abs(xi);
    if (a <= 1.0 / 3.0) return cplx{1.0, 0.0};
    if (a >= 2.0 / 3.0) return cplx{};
    const double t = 3.0 * a - 1.0;
    const double nu = sm ? smoothstep_cinf(t) : detail::meyer_nu(t);
    return cplx{std::cos(0.5 * kPi * nu), 0.0};
  };
  p.support = 2.0 / 3.0;
  p.flat_radius = 1.0 / 3.0;
  p.smooth_radius = sm ? 1e9 : 1.0 / 3.0;  // polynomial transition is C^3 at the joins
  return BandLimitedKernel(dim, p, sm ? "meyer:smooth" : "meyer", -1);
}

namespace detail {
/// Flat-top 1-D profile: 1 on [-delta,delta], C^inf descent to 0 at Delta.
inline double flat_top_profile(double xi, double delta, double Delta) {
  const double a = std::abs(xi);
  if (a <= delta) return 1.0;
  if (a >= Delta) return 0.0;
  return smoothstep_cinf((Delta - a) / (Delta - delta));
}

inline std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace detail

/// C^inf flat-top kernel: spectrum 1 on [-delta,delta]^d, supported in
/// [-Delta,Delta]^d. Strictly compatible with Dirac on the ball of radius
/// delta.
inline BandLimitedKernel make_flat_top(int dim, double delta, double Delta) {
  require(0 < delta && delta < Delta && Delta < 1.0, "flat_top: need 0 < delta < Delta < 1");
  KernelProfile p;
  p.theta = [delta, Delta](double xi) { return cplx{detail::flat_top_profile(xi, delta, Delta), 0.0}; };
  p.support = Delta;
  p.flat_radius = delta;
  const std::string id = "flat_top:" + detail::format_param(delta) + ":" + detail::format_param(Delta);
  return BandLimitedKernel(dim, p, id, -1);
}

/// Weak-order-n kernel: flat-top tail, but near 0 the profile is
/// 1 - c xi^n bump(xi), so 1 - theta vanishes to order exactly n at the
/// origin (weak compatibility of order n against Dirac and no better).
/// bump is a C-infinity flat-top window equal to 1 across the passband
/// [0, delta] and gone halfway to the band edge, so the defect equals
/// c xi^n exactly wherever the tail profile is flat; amplitude c = 2^n
/// keeps the order-n derivative large against FD noise.
inline BandLimitedKernel make_weak_order_kernel(int dim, int n, double delta, double Delta) {
  require(n >= 1 && n <= 6, "weak_order_kernel: n in [1,6]");
  require(0 < delta && delta < Delta && Delta < 1.0, "weak_order_kernel: need 0 < delta < Delta < 1");
  const double c = std::pow(2.0, n);
  KernelProfile p;
  p.theta = [n, c, delta, Delta](double xi) {
    const double s = detail::flat_top_profile(xi, delta, Delta);
    const double pert = c * std::pow(xi, n) * detail::flat_top_profile(xi, delta, 0.5 * (delta + Delta));
    return cplx{s * (1.0 - pert), 0.0};
  };
  p.support = Delta;
  p.flat_radius = 0.0;
  p.real_even = (n % 2 == 0);  // odd n: real but not even profile => complex phi1
  const std::string id = "weak:" + std::to_string(n) + ":" + detail::format_param(delta) + ":" +
                         detail::format_param(Delta);
  return BandLimitedKernel(dim, p, id, n);
}

/// Fejer-type mollifier: triangular spectrum on [-rho,rho], closed form
/// V(x) = rho sinc^2(rho x) >= 0 with integral 1. Decay is only 1/x^2, so
/// weight construction at tight tolerances rejects it; it serves as the
/// classical reference mollifier in audits.
inline BandLimitedKernel make_fejer_mollifier(int dim, double rho) {
  require(rho > 0 && rho < 2.0, "fejer: rho in (0,2)");
  KernelProfile p;
  p.theta = [rho](double xi) { return cplx{std::max(0.0, 1.0 - std::abs(xi) / rho), 0.0}; };
  p.support = rho;
  p.flat_radius = 0.0;
  p.smooth_radius = -1.0;  // kink at the origin: no FD stencil is safe
  auto closed = [rho](double x) {
    if (x == 0.0) return rho;
    const double s = std::sin(kPi * rho * x) / (kPi * rho * x);
    return rho * s * s;
  };
  const double env_c = std::max(4.0 * rho, 4.0 / (kPi * kPi * rho));
  return BandLimitedKernel(dim, p, "fejer:" + detail::format_param(rho), -1, closed, env_c, 2.0,
                           /*slow=*/false);
}

/// Nonnegative fast-decay mollifier: V = u^2 / ||u||_2^2 for a flat-top u, so
/// FV is the normalized autocorrelation of u's profile, supported in
/// [-rho,rho] with FV(0) = 1. Positivity is exact and decay matches u's.
inline BandLimitedKernel make_autocorrelation_mollifier(int dim, double rho) {
  require(rho > 0 && rho < 2.0, "autocorr: rho in (0,2)");
  const double delta = 0.25 * rho, Delta = 0.5 * rho;
  auto s = [delta, Delta](double xi) { return detail::flat_top_profile(xi, delta, Delta); };
  double l2 = integrate_panels([&](double t) { return s(t) * s(t); }, -Delta, Delta, 32, 8);
  KernelProfile p;
  p.theta = [s, Delta, l2](double xi) {
    const double a = std::abs(xi);
    if (a >= 2.0 * Delta) return cplx{};
    const double lo = std::max(-Delta, a - Delta);
    const double hi = Delta;
    const double conv = integrate_panels([&](double t) { return s(t) * s(a - t); }, lo, hi, 32, 8);
    return cplx{conv / l2, 0.0};
  };
  p.support = rho;
  p.flat_radius = 0.0;
  return BandLimitedKernel(dim, p, "autocorr:" + detail::format_param(rho), -1);
}

/// Registry: "sinc" | "meyer" | "meyer:smooth" | "flat_top:d:D" | "weak:n:d:D"
/// | "fejer:rho" | "autocorr:rho".
inline BandLimitedKernel kernel_from_id(int dim, const std::string& id) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    return parts;
  };
  const auto parts = split(id);
  try {
    if (parts.size() == 1 && parts[0] == "sinc") return make_sinc_tensor(dim);
    if (parts.size() == 1 && parts[0] == "meyer") return make_meyer_scaling(dim);
    if (parts.size() == 2 && parts[0] == "meyer" && parts[1] == "smooth")
      return make_meyer_scaling(dim, true);
    if (parts.size() == 3 && parts[0] == "flat_top")
      return make_flat_top(dim, std::stod(parts[1]), std::stod(parts[2]));
    if (parts.size() == 4 && parts[0] == "weak")
      return make_weak_order_kernel(dim, std::stoi(parts[1]), std::stod(parts[2]), std::stod(parts[3]));
    if (parts.size() == 2 && parts[0] == "fejer") return make_fejer_mollifier(dim, std::stod(parts[1]));
    if (parts.size() == 2 && parts[0] == "autocorr")
      return make_autocorrelation_mollifier(dim, std::stod(parts[1]));
  } catch (const std::invalid_argument&) {
    throw config_error("kernel_from_id: malformed parameters in '" + id + "'");
  }
  throw config_error("kernel_from_id: unknown kernel id '" + id + "'");
}

// ---- duals ---------------------------------------------------------------

/// Analysis functional f |-> <f, phit(M^j . - k)>: Dirac point evaluation,
/// mean over the cell [0,1]^d, or pairing against an explicit function.
class DualFunctional {
 public:
  enum class Kind { Dirac, BoxAverage, Function };

  static DualFunctional dirac(int dim) { return DualFunctional(Kind::Dirac, dim, "dirac", std::nullopt); }
  static DualFunctional box_average(int dim) {
    return DualFunctional(Kind::BoxAverage, dim, "box", std::nullopt);
  }
  static DualFunctional function(BandLimitedKernel k) {
    if (k.slow_decay())
      throw hypothesis_error("function dual '" + k.id() +
                             "' decays too slowly for a certified pairing quadrature");
    const int d = k.dim();
    std::string id = "fn:" + k.id();
    return DualFunctional(Kind::Function, d, std::move(id), std::move(k));
  }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::string& id() const { return id_; }
  const BandLimitedKernel& fn() const {
    require(kernel_.has_value(), "dual: no function payload");
    return *kernel_;
  }

  /// Per-axis spectrum of the dual: Ff-side symbol used in compatibility.
  cplx spectrum1(double xi) const {
    switch (kind_) {
      case Kind::Dirac:
        return cplx{1.0, 0.0};
      case Kind::BoxAverage: {
        // F[indicator of [0,1]](xi) = e^{-pi i xi} sin(pi xi)/(pi xi).
        const double s = (xi == 0.0) ? 1.0 : std::sin(kPi * xi) / (kPi * xi);
        return std::polar(s, -kPi * xi);
      }
      case Kind::Function:
        return kernel_->spectrum1(xi);
    }
    return {};
  }

  cplx spectrum(const vecd& xi) const {
    cplx s{1.0, 0.0};
    for (double v : xi) s *= spectrum1(v);
    return s;
  }

  /// Smoothness region radius for FD stencils at the origin.
  double smooth_radius() const {
    return kind_ == Kind::Function ? kernel_->smooth_radius() : 1e9;
  }

 private:
  DualFunctional(Kind k, int dim, std::string id, std::optional<BandLimitedKernel> kr)
      : kind_(k), dim_(dim), id_(std::move(id)), kernel_(std::move(kr)) {}

  Kind kind_;
  int dim_;
  std::string id_;
  std::optional<BandLimitedKernel> kernel_;
};

/// "dirac" | "box" | "fn:<kernel-id>".
inline DualFunctional dual_from_id(int dim, const std::string& id) {
  if (id == "dirac") return DualFunctional::dirac(dim);
  if (id == "box") return DualFunctional::box_average(dim);
  if (id.rfind("fn:", 0) == 0) return DualFunctional::function(kernel_from_id(dim, id.substr(3)));
  throw config_error("dual_from_id: unknown dual id '" + id + "'");
}

// ---- periodization norms ---------------------------------------------------

struct PeriodizationResult {
  double value = 0.0;
  double tail = 0.0;   // estimate for the dropped |k| > R shells
  bool converged = false;
};

/// L_p(T^d) norm of x |-> sum_k |f(x+k)| wstar(x+k), truncated at |k|_inf <= R.
/// Midpoint rule on the torus (grid_pts per axis); tail estimated from the
/// supplied envelope bound env(t) >= |f(x)| for |x|_inf >= t and the w* growth
/// bound cw (1+t^2)^{alpha/2}.
inline PeriodizationResult periodization_norm_generic(
    const std::function<double(const vecd&)>& absf, int dim, double p,
    const std::function<double(const vecd&)>& wstar, int R,
    const std::function<double(double)>& env, double alpha, double cw, int grid_pts = 64) {
  require(p >= 1.0, "periodization_norm: p >= 1");
  const int G = grid_pts;
  std::vector<double> cell((dim == 1) ? G : G * G, 0.0);
  vecd x(dim), y(dim);
  const auto eval_cell = [&](const vecd& x0) {
    double s = 0.0;
    if (dim == 1) {
      for (int k = -R; k <= R; ++k) {
        y[0] = x0[0] + k;
        s += absf(y) * wstar(y);
      }
    } else {
      for (int k0 = -R; k0 <= R; ++k0)
        for (int k1 = -R; k1 <= R; ++k1) {
          y[0] = x0[0] + k0;
          y[1] = x0[1] + k1;
          s += absf(y) * wstar(y);
        }
    }
    return s;
  };
  std::size_t idx = 0;
  if (dim == 1) {
    for (int i = 0; i < G; ++i) {
      x[0] = -0.5 + (i + 0.5) / G;
      cell[idx++] = eval_cell(x);
    }
  } else {
    for (int i = 0; i < G; ++i)
      for (int j = 0; j < G; ++j) {
        x[0] = -0.5 + (i + 0.5) / G;
        x[1] = -0.5 + (j + 0.5) / G;
        cell[idx++] = eval_cell(x);
      }
  }
  double sum = 0.0;
  for (double v : cell) sum += std::pow(v, p);
  const double value = std::pow(sum / double(cell.size()), 1.0 / p);

  // Tail: shells |k|_inf = t > R, shell cardinality <= 2d (2t+1)^{d-1}.
  double tail = 0.0;
  bool finite = true;
  for (int t = R + 1; t <= R + 512; ++t) {
    const double shell = 2.0 * dim * std::pow(2.0 * t + 1.0, dim - 1);
    const double term = shell * env(t - 0.5) * cw * std::pow(1.0 + sqr(t + 0.5), alpha / 2.0);
    tail += term;
    if (t == R + 512 && term > 1e-300 && term / std::max(tail, 1e-300) > 1e-6) finite = false;
  }
  return {value, tail, finite && tail <= 1e-6 * std::max(value, 1e-30)};
}

/// Periodization norm of a kernel against a dominant weight w*.
inline PeriodizationResult periodization_norm(const BandLimitedKernel& k, double p,
                                              const std::function<double(const vecd&)>& wstar,
                                              double alpha, double cw, int R = 8) {
  auto absf = [&k](const vecd& x) { return std::abs(k.eval(x)); };
  // |x|_inf >= t pins down one axis; the remaining ones are bounded by the
  // envelope's peak value.
  const double peak = std::pow(k.envelope_constant(), k.dim() - 1);
  auto env = [&k, peak](double t) { return k.envelope1(t) * peak; };
  if (k.slow_decay())
    throw hypothesis_error("periodization norm of '" + k.id() +
                           "' diverges: kernel lacks an integrable decay envelope");
  return periodization_norm_generic(absf, k.dim(), p, wstar, R, env, alpha, cw);
}

}  // namespace qproj
