#pragma once

// Shared small utilities: complex alias, error types, deterministic RNG,
// stable summation, binomial coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qproj {

using cplx = std::complex<double>;
using vecd = std::vector<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Bad user input (CLI flags, config files, malformed arguments).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A mathematical hypothesis required by the requested computation fails.
struct hypothesis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature/truncation/convergence failure at the requested tolerance.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Deterministic RNG with a platform-independent uniform mapping.
/// std::mt19937_64 sequences are pinned by the standard; the [0,1) mapping
/// below avoids the implementation-defined std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Box-Muller normal; fully determined by the draw sequence.
  double normal() {
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }
  cplx complex_normal() {
    double a = normal();
    double b = normal();
    return {a, b};
  }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Pairwise (cascade) summation: deterministic and O(log n) error growth.
template <class T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return v.empty() ? T{} : pairwise_sum(v.data(), v.size());
}

/// Exact binomial coefficient as double (n small).
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return std::round(r);
}

inline double sqr(double x) { return x * x; }

inline double norm2(const vecd& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double norm_inf(const vecd& x) {
  double s = 0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

/// C^infinity cutoff profile used throughout: sigma(u)=0 for u<=0, =1 for
/// u>=1, strictly increasing in between, with sigma(u)+sigma(1-u)=1.
inline double smoothstep_cinf(double u) {
  auto g = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double a = g(u), b = g(1.0 - u);
  return a + b > 0.0 ? a / (a + b) : 0.0;
}

/// C^infinity bump on (-1,1), bump(0)=1, vanishing to all orders at +-1.
inline double bump_cinf(double u) {
  const double t = 1.0 - u * u;
  return t > 0.0 ? std::exp(1.0 - 1.0 / t) : 0.0;
}

}  // namespace qproj
