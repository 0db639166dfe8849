#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "qproj/fft.hpp"
#include "qproj/grid.hpp"

using namespace qproj;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("fft round trip at 1e-10") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> a(256);
  for (auto& v : a) v = cplx{u(rng), u(rng)};
  auto b = a;
  fft_inplace(b, false);
  fft_inplace(b, true);
  for (auto& v : b) v /= double(b.size());  // both directions are unnormalized
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  REQUIRE(err < 1e-10);
}

TEST_CASE("fft is unitary up to the 1/n inverse scaling (parseval)") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> a(128);
  for (auto& v : a) v = cplx{u(rng), u(rng)};
  double space = 0.0;
  for (const auto& v : a) space += std::norm(v);
  auto b = a;
  fft_inplace(b, false);
  double freq = 0.0;
  for (const auto& v : b) freq += std::norm(v);
  REQUIRE(freq == Catch::Approx(space * double(a.size())).epsilon(1e-12));
}

TEST_CASE("2d transform equals two 1d passes") {
  const std::size_t n = 8;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> a(n * n);
  for (auto& v : a) v = cplx{u(rng), u(rng)};
  auto b = a;
  fft_nd(b, 2, n, false);
  // Manual: rows then columns.
  auto c = a;
  for (std::size_t r = 0; r < n; ++r) fft_inplace(c.data() + r * n, n, false);
  std::vector<cplx> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) col[r] = c[r * n + j];
    fft_inplace(col.data(), n, false);
    for (std::size_t r = 0; r < n; ++r) c[r * n + j] = col[r];
  }
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(b[i] - c[i]) < 1e-12);
}

TEST_CASE("grid coordinates and indexing") {
  GridSignal g = make_grid(1, 8, 4.0);
  REQUIRE(g.step() == Catch::Approx(1.0));
  REQUIRE(g.coord(0) == Catch::Approx(-4.0));
  REQUIRE(g.coord(7) == Catch::Approx(3.0));
  GridSignal h = make_grid(2, 4, 2.0);
  REQUIRE(h.size() == 16);
  REQUIRE(h.index({1, 2}) == 6);
  std::vector<std::size_t> idx;
  h.unindex(6, idx);
  REQUIRE(idx[0] == 1);
  REQUIRE(idx[1] == 2);
  REQUIRE_THROWS(make_grid(1, 12, 4.0));  // not a power of 2
  REQUIRE_THROWS(make_grid(3, 8, 4.0));   // rank
}

TEST_CASE("gaussian is its own transform (1e-8)") {
  // exp(-pi x^2) has transform exp(-pi xi^2) in this convention.
  GridSignal g = make_grid(1, 4096, 32.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.coord(i);
    g.values[i] = std::exp(-kPi * x * x);
  }
  GridSignal s = spectrum(g);
  double err = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) {
    const double xi = s.coord(i);
    err = std::max(err, std::abs(s.values[i] - cplx{std::exp(-kPi * xi * xi), 0.0}));
  }
  REQUIRE(err < 1e-8);
}

TEST_CASE("spectrum then inverse spectrum is the identity") {
  GridSignal g = make_grid(2, 32, 8.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : g.values) v = cplx{u(rng), u(rng)};
  GridSignal back = inverse_spectrum(spectrum(g));
  REQUIRE(back.n == g.n);
  REQUIRE(back.half_width == Catch::Approx(g.half_width));
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(g.values[i] - back.values[i]));
  REQUIRE(err < 1e-10);
}

TEST_CASE("lagrange interpolation is exact at nodes and accurate between") {
  GridSignal g = make_grid(1, 1024, 16.0);
  auto f = [](double x) { return std::sin(1.3 * x) * std::exp(-0.05 * x * x); };
  for (std::size_t i = 0; i < g.n; ++i) g.values[i] = f(g.coord(i));
  REQUIRE(std::abs(interpolate(g, {g.coord(500)}) - cplx{f(g.coord(500)), 0.0}) < 1e-13);
  double err = 0.0;
  for (double x = -8.0; x <= 8.0; x += 0.0917)
    err = std::max(err, std::abs(interpolate(g, {x}) - cplx{f(x), 0.0}));
  REQUIRE(err < 1e-8);
}

TEST_CASE("binary and csv grid writers are deterministic") {
  GridSignal g = make_grid(1, 16, 2.0);
  for (std::size_t i = 0; i < g.n; ++i) g.values[i] = cplx{std::sqrt(double(i) + 0.1), -0.25 * double(i)};
  write_grid("tmp_grid_a.bin", g);
  write_grid("tmp_grid_b.bin", g);
  REQUIRE(slurp("tmp_grid_a.bin") == slurp("tmp_grid_b.bin"));
  GridSignal r = read_grid("tmp_grid_a.bin");
  REQUIRE(r.n == g.n);
  REQUIRE(r.half_width == g.half_width);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(g.values[i] == r.values[i]);
  write_grid_csv("tmp_grid_a.csv", g);
  write_grid_csv("tmp_grid_b.csv", g);
  const std::string csv = slurp("tmp_grid_a.csv");
  REQUIRE(csv == slurp("tmp_grid_b.csv"));
  REQUIRE(csv.find(',') != std::string::npos);
  std::remove("tmp_grid_a.bin");
  std::remove("tmp_grid_b.bin");
  std::remove("tmp_grid_a.csv");
  std::remove("tmp_grid_b.csv");
}
