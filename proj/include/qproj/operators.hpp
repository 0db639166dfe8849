#pragma once

// The quasi-projection Q_j f = sum_k c_k phi(M^j x - k) with coefficients
// normalized so synthesis needs no extra determinant factor:
//   Dirac:        c_k = f(M^{-j} k)
//   BoxAverage:   c_k = mean of f over M^{-j}(k + [0,1]^d)
//   Function:     c_k = |det M|^j <f, phit(M^j . - k)>
// For separable signals the coefficients factor into 1-D spectral integrals
//   c_k = int Ff(xi) conj(Fphit(M^{-j} xi)) e^{2 pi i (k, M^{-j} xi)} d xi,
// one Gauss-Legendre pass per axis, rank and k-value.

#include "qproj/compat.hpp"
#include "qproj/dilation.hpp"
#include "qproj/signals.hpp"

namespace qproj {

struct CoefficientLattice {
  int dim = 1;
  int level = 0;
  std::string dual_id;
  std::vector<long> kmin, kmax;  // inclusive per-axis ranges
  std::vector<cplx> values;      // row-major over the ranges
  double residual_estimate = 0.0;  // outermost-shell magnitude (truncation surrogate)
  bool under_truncated = false;    // boundary shell still carries mass above tolerance

  long extent(int axis) const { return kmax[axis] - kmin[axis] + 1; }
  std::size_t size() const { return values.size(); }
  std::size_t index(const std::vector<long>& k) const {
    std::size_t idx = 0;
    for (int l = 0; l < dim; ++l) idx = idx * std::size_t(extent(l)) + std::size_t(k[l] - kmin[l]);
    return idx;
  }
  cplx at(const std::vector<long>& k) const { return values[index(k)]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  /// Largest coefficient on the outermost index shell (truncation indicator).
  double boundary_max_abs() const {
    double m = 0.0;
    if (dim == 1) {
      m = std::max(std::abs(values.front()), std::abs(values.back()));
    } else {
      const long e0 = extent(0), e1 = extent(1);
      for (long i = 0; i < e0; ++i)
        for (long j = 0; j < e1; ++j)
          if (i == 0 || j == 0 || i == e0 - 1 || j == e1 - 1)
            m = std::max(m, std::abs(values[std::size_t(i) * e1 + j]));
    }
    return m;
  }
};

struct CoefficientReport {
  CoefficientLattice lattice;
  bool quadrature_converged = true;
  double quadrature_drift = 0.0;  // max relative movement under node doubling (sampled)
};

namespace detail {

/// Dual per-axis symbol, conjugated as it enters the coefficient integral.
inline cplx dual_symbol_conj(const DualFunctional& dual, double u) {
  return std::conj(dual.spectrum1(u));
}

/// Per-axis spectral coefficient integrals for every k in [kmin, kmax]:
/// I(k) = int A(xi) conj(D(lam_inv xi)) e^{2 pi i k lam_inv xi} d xi.
/// reflect=true integrates A(xi) D(-lam_inv xi) e^{...} instead (second
/// branch for complex-valued duals).
inline std::vector<cplx> axis_spectral_integrals(const std::function<cplx(double)>& A, double rho,
                                                 const DualFunctional& dual, double lam_inv,
                                                 long kmin, long kmax, int base_nodes,
                                                 bool reflect) {
  const std::size_t cnt = std::size_t(kmax - kmin + 1);
  std::vector<cplx> out(cnt);
  // The integrand vanishes wherever the dual symbol does, so shrink the range
  // to the dual's spectral support (function duals have rough band edges that
  // would otherwise dominate the quadrature error).
  double r = rho;
  if (dual.kind() == DualFunctional::Kind::Function)
    r = std::min(r, dual.fn().support() / lam_inv);
  const double kabs = std::max(std::abs(double(kmin)), std::abs(double(kmax)));
  int n = base_nodes + int(12.0 * r * lam_inv * kabs);
  n = ((n + 31) / 32) * 32;
  n = std::min(n, 4096);
  // Composite panels resolve non-analytic profile transitions inside the band.
  const int panels = 8;
  const int per = std::max(32, (n + panels - 1) / panels);
  const GaussLegendre& gl = gauss_legendre(per);
  const std::size_t m = std::size_t(per) * panels;
  std::vector<cplx> amp(m);
  std::vector<double> node(m);
  const double h = 2.0 * r / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -r + (p + 0.5) * h;
    for (int q = 0; q < per; ++q) {
      const std::size_t idx = std::size_t(p) * per + q;
      const double xi = mid + 0.5 * h * gl.x[q];
      node[idx] = xi;
      const double u = lam_inv * xi;
      const cplx d = reflect ? dual.spectrum1(-u) : std::conj(dual.spectrum1(u));
      amp[idx] = A(xi) * d * (0.5 * h * gl.w[q]);
    }
  }
  for (long k = kmin; k <= kmax; ++k) {
    cplx s{};
    for (std::size_t q = 0; q < m; ++q)
      s += amp[q] * std::polar(1.0, 2.0 * kPi * double(k) * lam_inv * node[q]);
    out[std::size_t(k - kmin)] = s;
  }
  return out;
}

}  // namespace detail

/// Coefficients of Q_j over the index box [kmin, kmax].
inline CoefficientReport compute_coefficients(const Signal& f, const DualFunctional& dual,
                                              const DilationMatrix& M, int j,
                                              const std::vector<long>& kmin,
                                              const std::vector<long>& kmax) {
  require(f.dim == M.dim() && f.dim == dual.dim(), "compute_coefficients: dimension mismatch");
  const int d = f.dim;
  CoefficientReport rep;
  CoefficientLattice& lat = rep.lattice;
  lat.dim = d;
  lat.level = j;
  lat.dual_id = dual.id();
  lat.kmin = kmin;
  lat.kmax = kmax;
  std::size_t total = 1;
  for (int l = 0; l < d; ++l) {
    require(kmax[l] >= kmin[l], "compute_coefficients: empty index range");
    total *= std::size_t(lat.extent(l));
  }
  lat.values.assign(total, cplx{});

  // --- Dirac: pure sampling -------------------------------------------------
  if (dual.kind() == DualFunctional::Kind::Dirac) {
    if (f.separable()) {
      std::vector<vecd> coords(d);
      for (int l = 0; l < d; ++l) {
        const double lam_inv = std::pow(M.diag()[l], double(-j));
        for (long k = kmin[l]; k <= kmax[l]; ++k) coords[l].push_back(lam_inv * double(k));
      }
      const auto fac = eval_axis_factors(f, coords);
      for (std::size_t r = 0; r < f.terms.size(); ++r) {
        const double c = f.terms[r].coef;
        if (d == 1) {
          for (std::size_t i = 0; i < lat.values.size(); ++i)
            lat.values[i] += c * fac[r][0][i];
        } else {
          const std::size_t e1 = std::size_t(lat.extent(1));
          for (long i = 0; i < lat.extent(0); ++i)
            for (long q = 0; q < lat.extent(1); ++q)
              lat.values[std::size_t(i) * e1 + q] += c * fac[r][0][i] * fac[r][1][q];
        }
      }
      for (auto& v : lat.values) v = cplx{v.real(), 0.0};
    } else {
      std::vector<long> k(d);
      vecd x(d);
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int l = d - 1; l >= 0; --l) {
          k[l] = kmin[l] + long(rem % std::size_t(lat.extent(l)));
          rem /= std::size_t(lat.extent(l));
        }
        for (int l = 0; l < d; ++l) x[l] = std::pow(M.diag()[l], double(-j)) * double(k[l]);
        lat.values[flat] = f.eval(x);
      }
    }
    return rep;
  }

  // --- separable signals: per-axis spectral integrals -------------------------
  if (f.separable()) {
    const bool dual_real =
        dual.kind() != DualFunctional::Kind::Function || dual.fn().real_valued();
    std::vector<std::vector<std::vector<cplx>>> I(f.terms.size()),
        Irefl(f.terms.size());  // [rank][axis][k]
    for (std::size_t r = 0; r < f.terms.size(); ++r) {
      I[r].resize(d);
      if (!dual_real) Irefl[r].resize(d);
      const double band = f.terms[r].band > 0.0 ? f.terms[r].band : f.rho_axis;
      for (int l = 0; l < d; ++l) {
        const double lam_inv = std::pow(M.diag()[l], double(-j));
        I[r][l] = detail::axis_spectral_integrals(f.terms[r].axes[l].amplitude, band, dual,
                                                  lam_inv, kmin[l], kmax[l], f.quad_nodes, false);
        if (!dual_real)
          Irefl[r][l] = detail::axis_spectral_integrals(f.terms[r].axes[l].amplitude, band,
                                                        dual, lam_inv, kmin[l], kmax[l],
                                                        f.quad_nodes, true);
      }
    }
    for (std::size_t r = 0; r < f.terms.size(); ++r) {
      const double c = f.terms[r].coef;
      if (d == 1) {
        for (std::size_t i = 0; i < total; ++i) {
          const cplx main = c * I[r][0][i];
          const cplx refl = dual_real ? main : c * Irefl[r][0][i];
          lat.values[i] += 0.5 * (main + std::conj(refl));
        }
      } else {
        const std::size_t e1 = std::size_t(lat.extent(1));
        for (long i = 0; i < lat.extent(0); ++i)
          for (long q = 0; q < lat.extent(1); ++q) {
            const cplx main = c * I[r][0][i] * I[r][1][q];
            const cplx refl = dual_real ? main : c * Irefl[r][0][i] * Irefl[r][1][q];
            lat.values[std::size_t(i) * e1 + q] += 0.5 * (main + std::conj(refl));
          }
      }
    }
    return rep;
  }

  // --- non-separable: space quadrature ----------------------------------------
  // c_k = int_{[0,1]^d} f(M^{-j}(k+t)) dt                      (BoxAverage)
  // c_k = int f(M^{-j}(y+k)) conj(phit(y)) dy                  (Function)
  const bool is_box = dual.kind() == DualFunctional::Kind::BoxAverage;
  double lo = 0.0, hi = 1.0;
  int nodes = 8, panels = 1;
  if (!is_box) {
    const auto rad = dual.fn().effective_radius(1e-10);
    hi = rad.value + 0.5;
    lo = -hi;
    panels = int(std::ceil(hi));
    nodes = 8;
  }
  vecd lam_inv(d);
  for (int l = 0; l < d; ++l) lam_inv[l] = std::pow(M.diag()[l], double(-j));

  auto cell_value = [&](const std::vector<long>& k, int nn) {
    vecd x(d);
    if (d == 1) {
      auto g = [&](double t) {
        x[0] = lam_inv[0] * (double(k[0]) + t);
        const cplx fv = f.eval(x);
        const cplx dv = is_box ? cplx{1.0, 0.0} : std::conj(dual.fn().eval1(t));
        return fv * dv;
      };
      return integrate_panels(g, lo, hi, nn, 2 * panels);
    }
    auto outer = [&](double t0) {
      auto inner = [&](double t1) {
        x[0] = lam_inv[0] * (double(k[0]) + t0);
        x[1] = lam_inv[1] * (double(k[1]) + t1);
        const cplx fv = f.eval(x);
        const cplx dv =
            is_box ? cplx{1.0, 0.0} : std::conj(dual.fn().eval1(t0) * dual.fn().eval1(t1));
        return fv * dv;
      };
      return integrate_panels(inner, lo, hi, nn, 2 * panels);
    };
    return integrate_panels(outer, lo, hi, nn, 2 * panels);
  };

  std::vector<long> k(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int l = d - 1; l >= 0; --l) {
      k[l] = kmin[l] + long(rem % std::size_t(lat.extent(l)));
      rem /= std::size_t(lat.extent(l));
    }
    lat.values[flat] = cell_value(k, nodes);
  }
  // Node-doubling audit on a sampled subset.
  const std::size_t stride = std::max<std::size_t>(1, total / 32);
  double drift = 0.0, scale = std::max(lat.max_abs(), 1e-30);
  for (std::size_t flat = 0; flat < total; flat += stride) {
    std::size_t rem = flat;
    for (int l = d - 1; l >= 0; --l) {
      k[l] = kmin[l] + long(rem % std::size_t(lat.extent(l)));
      rem /= std::size_t(lat.extent(l));
    }
    drift = std::max(drift, std::abs(cell_value(k, 2 * nodes) - lat.values[flat]) / scale);
  }
  rep.quadrature_drift = drift;
  rep.quadrature_converged = drift <= 1e-8;
  return rep;
}

/// Coefficients over the symmetric box K_l = ceil(lambda_l^j L + margin + 1),
/// flagged UNDER-TRUNCATED when the outermost shell still carries relative
/// mass above tol.
inline CoefficientReport coefficients(const Signal& f, const DualFunctional& dual,
                                      const DilationMatrix& M, int j, double L, double tol = 1e-10,
                                      double margin = 12.0) {
  require(L > 0 && margin >= 0, "coefficients: L > 0, margin >= 0");
  const int d = f.dim;
  std::vector<long> kmin(d), kmax(d);
  for (int l = 0; l < d; ++l) {
    const double lam_j = std::pow(std::abs(M.diag()[l]), double(j));
    const long K = long(std::ceil(lam_j * L + margin + 1.0));
    kmin[l] = -K;
    kmax[l] = K;
  }
  CoefficientReport rep = compute_coefficients(f, dual, M, j, kmin, kmax);
  rep.lattice.residual_estimate = rep.lattice.boundary_max_abs();
  rep.lattice.under_truncated =
      rep.lattice.residual_estimate > tol * std::max(1.0, rep.lattice.max_abs());
  return rep;
}

// ---- synthesis -----------------------------------------------------------------

struct SynthesisResult {
  GridSignal values;
  double kernel_radius = 0.0;      // per-axis window actually used
  bool radius_certified = true;    // false when the decay cap bit (slow kernels)
  double tail_residual = 0.0;      // bound on the dropped kernel translates
};

/// sum_k c_k phi(M^j x - k) evaluated on a uniform grid, separable two-pass.
/// Slow-decay kernels (sinc) have no certifiable truncation tail and must be
/// explicitly acknowledged via allow_slow.
inline SynthesisResult synthesize(const BandLimitedKernel& kernel, const DilationMatrix& M,
                                  const CoefficientLattice& lat, std::size_t n, double half_width,
                                  double tail_tol = 1e-10, bool allow_slow = false) {
  require(kernel.dim() == lat.dim && M.dim() == lat.dim, "synthesize: dimension mismatch");
  if (kernel.slow_decay() && !allow_slow)
    throw hypothesis_error("synthesize: kernel '" + kernel.id() +
                           "' decays too slowly to certify truncation; pass allow_slow to "
                           "proceed with an uncertified window");
  const int d = lat.dim;
  const int j = lat.level;
  SynthesisResult res;
  res.values = make_grid(d, n, half_width);
  const auto rad = kernel.effective_radius(tail_tol);
  res.kernel_radius = rad.value;
  res.radius_certified = rad.certified;
  const double R = rad.value;

  // Per-axis kernel factor tables: row i -> {k window, phi1 values}.
  struct AxisRow {
    long k0;
    std::vector<cplx> phi;
  };
  auto build_axis = [&](int axis) {
    const double lam = std::pow(M.diag()[axis], double(j));
    std::vector<AxisRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double base = lam * res.values.coord(i);
      long klo = std::max(lat.kmin[axis], long(std::ceil(base - R)));
      long khi = std::min(lat.kmax[axis], long(std::floor(base + R)));
      AxisRow row;
      row.k0 = klo;
      for (long k = klo; k <= khi; ++k) row.phi.push_back(kernel.eval1(base - double(k)));
      rows[i] = std::move(row);
    }
    return rows;
  };
  const auto rows0 = build_axis(0);

  if (d == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      cplx s{};
      const auto& row = rows0[i];
      for (std::size_t t = 0; t < row.phi.size(); ++t)
        s += lat.values[std::size_t(row.k0 - lat.kmin[0]) + t] * row.phi[t];
      res.values.values[i] = s;
    }
  } else {
    const auto rows1 = build_axis(1);
    // Pass 1: contract axis 1: B[k0][i1] = sum_k1 c_{k0,k1} phi1(lam1 x_{i1} - k1).
    const std::size_t e0 = std::size_t(lat.extent(0)), e1 = std::size_t(lat.extent(1));
    std::vector<cplx> B(e0 * n);
    for (std::size_t a = 0; a < e0; ++a) {
      const cplx* crow = lat.values.data() + a * e1;
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        const auto& row = rows1[i1];
        cplx s{};
        for (std::size_t t = 0; t < row.phi.size(); ++t)
          s += crow[std::size_t(row.k0 - lat.kmin[1]) + t] * row.phi[t];
        B[a * n + i1] = s;
      }
    }
    // Pass 2: contract axis 0.
    for (std::size_t i0 = 0; i0 < n; ++i0) {
      const auto& row = rows0[i0];
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        cplx s{};
        for (std::size_t t = 0; t < row.phi.size(); ++t)
          s += row.phi[t] * B[(std::size_t(row.k0 - lat.kmin[0]) + t) * n + i1];
        res.values.values[i0 * n + i1] = s;
      }
    }
  }

  // Dropped translates: per-axis tail times the worst coefficient, with the
  // other axes bounded by a full envelope lattice sum.
  const double axis_sum = 2.03 * kernel.envelope_constant() + 1.0;
  res.tail_residual =
      lat.max_abs() * d * kernel.tail_mass(R) * std::pow(axis_sum, d - 1);
  return res;
}

// ---- end-to-end application -------------------------------------------------------

struct OperatorApplication {
  CoefficientLattice coeffs;
  GridSignal approximation;
  double kernel_radius = 0.0;
  bool radius_certified = true;
  double tail_residual = 0.0;
  double boundary_coeff_max = 0.0;
  bool quadrature_converged = true;
  double quadrature_drift = 0.0;
};

/// Q_j f on the grid [-half_width, half_width]^d with n points per axis; the
/// index box covers every translate that meets the grid. Requires the kernel
/// spectrum strictly inside the unit cell (the quasi-projection hypothesis).
inline OperatorApplication apply_operator(const Signal& f, const BandLimitedKernel& kernel,
                                          const DualFunctional& dual, const DilationMatrix& M,
                                          int j, std::size_t n, double half_width,
                                          double tail_tol = 1e-10, bool allow_slow = false) {
  require(f.dim == kernel.dim() && f.dim == dual.dim() && f.dim == M.dim(),
          "apply_operator: dimension mismatch");
  require(j >= 0, "apply_operator: level j must be nonnegative");
  if (kernel.support() >= 1.0)
    throw hypothesis_error("apply_operator: kernel '" + kernel.id() +
                           "' has spectral support outside the open unit cell");
  const int d = f.dim;
  const auto rad = kernel.effective_radius(tail_tol);
  std::vector<long> kmin(d), kmax(d);
  for (int l = 0; l < d; ++l) {
    const double lam_j = std::pow(std::abs(M.diag()[l]), double(j));
    const long K = long(std::ceil(lam_j * half_width + rad.value + 1.0));
    kmin[l] = -K;
    kmax[l] = K;
  }
  CoefficientReport coef = compute_coefficients(f, dual, M, j, kmin, kmax);
  coef.lattice.residual_estimate = coef.lattice.boundary_max_abs();
  // Interior calibration: a coefficient dropped beyond the lattice reaches the
  // central half-box only through the kernel tail across the buffer zone
  // (half the scaled box plus the effective radius), so attenuate the
  // boundary-shell magnitude by that tail before comparing with tolerance.
  double tail_atten = 0.0;
  for (int l = 0; l < d; ++l) {
    const double lam_j = std::pow(std::abs(M.diag()[l]), double(j));
    const double buffer = double(kmax[l]) - 0.5 * lam_j * half_width;
    tail_atten = std::max(tail_atten, kernel.tail_mass(std::max(0.0, buffer - 1.0)));
  }
  coef.lattice.under_truncated =
      coef.lattice.residual_estimate * double(d) * tail_atten >
      tail_tol * std::max(1.0, coef.lattice.max_abs());
  SynthesisResult syn = synthesize(kernel, M, coef.lattice, n, half_width, tail_tol, allow_slow);

  OperatorApplication app;
  app.boundary_coeff_max = coef.lattice.boundary_max_abs();
  app.coeffs = std::move(coef.lattice);
  app.approximation = std::move(syn.values);
  app.kernel_radius = syn.kernel_radius;
  app.radius_certified = syn.radius_certified;
  app.tail_residual = syn.tail_residual;
  app.quadrature_converged = coef.quadrature_converged;
  app.quadrature_drift = coef.quadrature_drift;
  return app;
}

}  // namespace qproj
