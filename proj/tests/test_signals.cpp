#include "catch_amalgamated.hpp"
#include "qproj/signals.hpp"

using namespace qproj;

TEST_CASE("gaussian: closed-form values and spectrum") {
  Signal f = make_gaussian(1, 2.0, {0.5}, 1.5);
  const double x = 1.25;
  const double want = 2.0 * std::exp(-kPi * sqr((x - 0.5) / 1.5));
  REQUIRE(f.eval_real({x}) == Catch::Approx(want).epsilon(1e-14));
  REQUIRE(f.eval({x}).imag() == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(f.separable());
  // Unit gaussian samples onto a grid matching the pointwise formula.
  Signal g = make_gaussian(2, 1.0, {0.0, 0.0}, 1.0);
  GridSignal gg = sample_to_grid(g, 8.0, 64);
  std::vector<std::size_t> idx;
  for (std::size_t flat = 0; flat < gg.size(); flat += 97) {
    gg.unindex(flat, idx);
    const double r2 = sqr(gg.coord(idx[0])) + sqr(gg.coord(idx[1]));
    REQUIRE(std::abs(gg.values[flat] - cplx{std::exp(-kPi * r2), 0.0}) < 1e-12);
  }
}

TEST_CASE("band-limited signal: deterministic seed and in-band spectrum") {
  Signal f = make_bandlimited_signal(1, 0.2);
  Signal g = make_bandlimited_signal(1, 0.2);
  REQUIRE(f.exact_band);
  REQUIRE(f.rho_axis == Catch::Approx(0.2));
  for (double x : {-3.3, 0.0, 1.7, 12.0})
    REQUIRE(std::abs(f.eval({x}) - g.eval({x})) == 0.0);
  // Different seeds give different signals.
  Signal h = make_bandlimited_signal(1, 0.2, 77);
  bool differs = false;
  for (double x : {0.3, 1.1, 2.9}) differs = differs || std::abs(f.eval({x}) - h.eval({x})) > 1e-12;
  REQUIRE(differs);
  // The spectral amplitudes vanish identically outside the stated band.
  for (const auto& t : f.terms)
    for (double xi : {0.2000001, 0.25, 0.5, 3.0}) {
      REQUIRE(std::abs(t.axes[0].amplitude(xi)) == 0.0);
      REQUIRE(std::abs(t.axes[0].amplitude(-xi)) == 0.0);
    }
  // Sampled-window DFT leakage is a truncation artifact and shrinks as the
  // window grows; it is not signal content.
  auto leak_ratio = [&](std::size_t n) {
    GridSignal fg = sample_to_grid(f, double(n) / 64.0, n);
    GridSignal spec = spectrum(fg);
    double inside = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double xi = std::abs(spec.coord(i));
      const double m = std::abs(spec.values[i]);
      if (xi <= 0.2 * 1.0001) inside = std::max(inside, m);
      else outside = std::max(outside, m);
    }
    return outside / inside;
  };
  const double r2k = leak_ratio(2048), r8k = leak_ratio(8192);
  REQUIRE(r2k < 0.02);
  REQUIRE(r8k < 0.5 * r2k);
}

TEST_CASE("matern-like signal: spectrum normalization and decay invariants") {
  Weight w = make_polynomial_weight(1, 0.25);
  Signal f = make_matern_like(1, 1.0, w);
  REQUIRE(f.spectral_decay_a == Catch::Approx(1.0));
  REQUIRE(f.radial_base_spectrum(0.0) == Catch::Approx(1.0));
  // |g^(r)| r^{d+a} -> 1 from below as r grows.
  double prev = 0.0;
  for (double r : {4.0, 8.0, 16.0, 32.0}) {
    const double v = f.radial_base_spectrum(r) * std::pow(r, 2.0);
    REQUIRE(v > prev);
    REQUIRE(v < 1.0);
    prev = v;
  }
  REQUIRE(prev > 0.99);
  // Even, real, and maximal at the origin; the weight factor is exact.
  REQUIRE(f.eval_real({1.3}) == Catch::Approx(f.eval_real({-1.3})).epsilon(1e-9));
  REQUIRE(f.eval({2.0}).imag() == 0.0);
  REQUIRE(f.eval_real({0.0}) > f.eval_real({1.0}));
  Weight unit = make_unit_weight(1);
  Signal base = make_matern_like(1, 1.0, unit);
  REQUIRE(f.eval_real({3.0}) ==
          Catch::Approx(base.eval_real({3.0}) * w.eval({3.0})).epsilon(1e-12));
}

TEST_CASE("trig polynomial: bounded, even structure in each factor") {
  Signal f = make_trig_poly(1);
  for (double x = -20.0; x <= 20.0; x += 0.37) {
    const double v = f.eval_real({x});
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.4);
  }
}

TEST_CASE("combinations evaluate linearly and merge band info") {
  Signal a = make_gaussian(1, 1.0, {0.0}, 1.0);
  Signal b = make_bandlimited_signal(1, 0.25, 7);
  Signal c = make_combination({{0.7, a}, {0.5, b}});
  for (double x : {-2.0, 0.1, 3.3}) {
    const cplx want = 0.7 * a.eval({x}) + 0.5 * b.eval({x});
    REQUIRE(std::abs(c.eval({x}) - want) < 1e-14);
  }
  REQUIRE(c.separable());
  REQUIRE_FALSE(c.exact_band);  // the gaussian part is not band-limited
}

TEST_CASE("signal ids parse and validate") {
  Weight u = make_unit_weight(1);
  REQUIRE(signal_from_id(1, "gaussian", u).id.rfind("gaussian", 0) == 0);
  REQUIRE(signal_from_id(1, "gaussian:2:0.5:1.5", u).eval_real({0.5}) == Catch::Approx(2.0));
  REQUIRE(signal_from_id(1, "bandlimited:0.2", u).rho_axis == Catch::Approx(0.2));
  REQUIRE(signal_from_id(1, "matern:1", u).spectral_decay_a == Catch::Approx(1.0));
  REQUIRE(signal_from_id(1, "trig", u).dim == 1);
  REQUIRE_THROWS_AS(signal_from_id(1, "spline:3", u), config_error);
  REQUIRE_THROWS_AS(signal_from_id(1, "matern:abc", u), config_error);
}
