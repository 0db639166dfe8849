#pragma once

// Iterative radix-2 complex FFT (power-of-2 lengths only, matching the grid
// data model) plus a rank-agnostic wrapper for row-major multi-dim arrays.

#include "qproj/common.hpp"

namespace qproj {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place unnormalized DFT: X_k = sum_i x_i e^{-+2 pi i ik/N}
/// (sign - for forward, + for inverse; caller handles 1/N scaling).
inline void fft_inplace(cplx* a, std::size_t n, bool inverse) {
  require(is_pow2(n), "fft: length must be a power of 2");
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / double(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline void fft_inplace(std::vector<cplx>& a, bool inverse) { fft_inplace(a.data(), a.size(), inverse); }

/// FFT along every axis of a row-major array with extent n per axis, rank d.
inline void fft_nd(std::vector<cplx>& a, int dim, std::size_t n, bool inverse) {
  require(dim >= 1 && dim <= 3, "fft_nd: rank out of range");
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= n;
  require(a.size() == total, "fft_nd: size mismatch");
  if (dim == 1) {
    fft_inplace(a, inverse);
    return;
  }
  std::vector<cplx> line(n);
  for (int axis = 0; axis < dim; ++axis) {
    std::size_t stride = 1;
    for (int k = axis + 1; k < dim; ++k) stride *= n;
    const std::size_t block = stride * n;
    for (std::size_t outer = 0; outer < total / block; ++outer) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t base = outer * block + off;
        if (stride == 1) {
          fft_inplace(a.data() + base, n, inverse);
        } else {
          for (std::size_t i = 0; i < n; ++i) line[i] = a[base + i * stride];
          fft_inplace(line.data(), n, inverse);
          for (std::size_t i = 0; i < n; ++i) a[base + i * stride] = line[i];
        }
      }
    }
  }
}

}  // namespace qproj
