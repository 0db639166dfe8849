#pragma once

// GridSignal: uniform complex samples on [-L, L)^d, N (power of 2) per axis,
// sample i at x = -L + 2L i/N, row-major storage.
//
// Fourier convention: Ff(xi) = integral f(x) e^{-2 pi i (x,xi)} dx.
// spectrum() approximates Ff on the dual grid xi_m = m/(2L), m = -N/2..N/2-1,
// stored in ascending frequency order as a GridSignal with half_width N/(4L).
// With this scaling spectrum/inverse_spectrum are exact mutual inverses and
// h^d sum|f|^2 = (2L)^{-d} sum|F|^2 (discrete Plancherel).

#include <cstdio>
#include <cstring>
#include <fstream>

#include "qproj/fft.hpp"

namespace qproj {

struct GridSignal {
  int dim = 1;
  std::size_t n = 0;       // samples per axis, power of 2
  double half_width = 0;   // L
  std::vector<cplx> values;  // size n^dim, row-major

  double step() const { return 2.0 * half_width / double(n); }
  double coord(std::size_t i) const { return -half_width + step() * double(i); }
  std::size_t size() const { return values.size(); }

  std::size_t index(const std::vector<std::size_t>& idx) const {
    std::size_t r = 0;
    for (int k = 0; k < dim; ++k) r = r * n + idx[k];
    return r;
  }
  /// Decode flat index into per-axis indices.
  void unindex(std::size_t flat, std::vector<std::size_t>& idx) const {
    idx.resize(dim);
    for (int k = dim - 1; k >= 0; --k) {
      idx[k] = flat % n;
      flat /= n;
    }
  }
};

inline GridSignal make_grid(int dim, std::size_t n, double half_width) {
  require(dim >= 1 && dim <= 2, "make_grid: dim must be 1 or 2");
  require(is_pow2(n), "make_grid: N must be a power of 2");
  require(half_width > 0, "make_grid: L must be positive");
  GridSignal g;
  g.dim = dim;
  g.n = n;
  g.half_width = half_width;
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= n;
  g.values.assign(total, cplx{});
  return g;
}

namespace detail {
/// Parity (-1)^(m_1+...+m_d) and source bin for frequency-ordered index u:
/// m = u - N/2 per axis, bin = m mod N.
inline void spectrum_reorder(const GridSignal& in, GridSignal& out, bool forward) {
  const std::size_t n = in.n;
  const std::size_t half = n / 2;
  std::vector<std::size_t> idx;
  for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
    out.unindex(flat, idx);
    long msum = 0;
    std::size_t src = 0;
    for (int k = 0; k < out.dim; ++k) {
      const long m = long(idx[k]) - long(half);
      msum += m;
      const std::size_t bin = std::size_t((m + long(n)) % long(n));
      src = src * n + bin;
    }
    const double sign = (msum % 2 == 0) ? 1.0 : -1.0;
    if (forward)
      out.values[flat] = sign * in.values[src];
    else
      out.values[src] = sign * in.values[flat];
  }
}
}  // namespace detail

/// Forward transform: returns the spectrum grid (half_width = N/(4L)).
inline GridSignal spectrum(const GridSignal& g) {
  GridSignal work = g;
  fft_nd(work.values, g.dim, g.n, /*inverse=*/false);
  GridSignal out = make_grid(g.dim, g.n, double(g.n) / (4.0 * g.half_width));
  detail::spectrum_reorder(work, out, /*forward=*/true);
  double scale = 1.0;
  for (int k = 0; k < g.dim; ++k) scale *= g.step();
  for (auto& v : out.values) v *= scale;
  return out;
}

/// Inverse transform: spectrum grid back to the space grid it came from.
inline GridSignal inverse_spectrum(const GridSignal& s) {
  const double space_l = double(s.n) / (4.0 * s.half_width);
  GridSignal work = make_grid(s.dim, s.n, space_l);
  detail::spectrum_reorder(s, work, /*forward=*/false);
  fft_nd(work.values, s.dim, s.n, /*inverse=*/true);
  double scale = 1.0;
  for (int k = 0; k < s.dim; ++k) scale *= 1.0 / (2.0 * space_l);
  for (auto& v : work.values) v *= scale;
  return work;
}

// ---- interpolation ----------------------------------------------------

namespace detail {
/// Lagrange weights for `ord` consecutive nodes, local coordinate t in node
/// units measured from the window start.
inline void lagrange_weights(double t, int ord, double* w) {
  for (int r = 0; r < ord; ++r) {
    double num = 1.0, den = 1.0;
    for (int s = 0; s < ord; ++s) {
      if (s == r) continue;
      num *= (t - s);
      den *= double(r - s);
    }
    w[r] = num / den;
  }
}
}  // namespace detail

/// Tensor Lagrange interpolation of order `ord` (4 = cubic, 6 = quintic).
/// Points outside the grid box evaluate to 0 (tables are built wide enough
/// that out-of-box values are below the decay envelope).
inline cplx interpolate(const GridSignal& g, const vecd& x, int ord = 6) {
  require(int(x.size()) == g.dim, "interpolate: dimension mismatch");
  require(ord >= 2 && ord <= 8, "interpolate: order out of range");
  const double h = g.step();
  long base[2] = {0, 0};
  double wgt[2][8];
  for (int k = 0; k < g.dim; ++k) {
    if (x[k] < -g.half_width || x[k] >= g.half_width) return cplx{};
    const double u = (x[k] + g.half_width) / h;  // in [0, N)
    long b = long(std::floor(u)) - (ord / 2 - 1);
    b = std::max(0l, std::min(b, long(g.n) - ord));
    detail::lagrange_weights(u - double(b), ord, wgt[k]);
    base[k] = b;
  }
  if (g.dim == 1) {
    cplx s{};
    for (int r = 0; r < ord; ++r) s += wgt[0][r] * g.values[std::size_t(base[0] + r)];
    return s;
  }
  cplx s{};
  for (int r0 = 0; r0 < ord; ++r0) {
    cplx row{};
    const std::size_t off = std::size_t(base[0] + r0) * g.n + std::size_t(base[1]);
    for (int r1 = 0; r1 < ord; ++r1) row += wgt[1][r1] * g.values[off + r1];
    s += wgt[0][r0] * row;
  }
  return s;
}

// ---- IO ----------------------------------------------------------------

/// Binary layout: int64 dim, int64 N, float64 L, then N^dim float64 pairs
/// (re, im) row-major, little-endian.
inline void write_grid(const std::string& path, const GridSignal& g) {
  std::ofstream f(path, std::ios::binary);
  require(bool(f), "write_grid: cannot open " + path);
  const std::int64_t dim = g.dim, n = std::int64_t(g.n);
  f.write(reinterpret_cast<const char*>(&dim), 8);
  f.write(reinterpret_cast<const char*>(&n), 8);
  f.write(reinterpret_cast<const char*>(&g.half_width), 8);
  for (const cplx& v : g.values) {
    const double re = v.real(), im = v.imag();
    f.write(reinterpret_cast<const char*>(&re), 8);
    f.write(reinterpret_cast<const char*>(&im), 8);
  }
}

inline GridSignal read_grid(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(bool(f), "read_grid: cannot open " + path);
  std::int64_t dim = 0, n = 0;
  double l = 0;
  f.read(reinterpret_cast<char*>(&dim), 8);
  f.read(reinterpret_cast<char*>(&n), 8);
  f.read(reinterpret_cast<char*>(&l), 8);
  require(dim >= 1 && dim <= 2 && n > 0 && is_pow2(std::size_t(n)), "read_grid: bad header");
  GridSignal g = make_grid(int(dim), std::size_t(n), l);
  for (cplx& v : g.values) {
    double re = 0, im = 0;
    f.read(reinterpret_cast<char*>(&re), 8);
    f.read(reinterpret_cast<char*>(&im), 8);
    v = {re, im};
  }
  require(bool(f), "read_grid: truncated file");
  return g;
}

/// CSV: coordinate columns then re, im; fixed "%.17g" formatting so identical
/// data produces identical bytes.
inline void write_grid_csv(const std::string& path, const GridSignal& g) {
  std::ofstream f(path);
  require(bool(f), "write_grid_csv: cannot open " + path);
  f << (g.dim == 1 ? "x,re,im\n" : "x0,x1,re,im\n");
  char buf[96];
  std::vector<std::size_t> idx;
  for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
    g.unindex(flat, idx);
    for (int k = 0; k < g.dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,", g.coord(idx[k]));
      f << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.values[flat].real(), g.values[flat].imag());
    f << buf;
  }
}

}  // namespace qproj
