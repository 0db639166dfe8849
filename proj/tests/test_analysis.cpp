#include "catch_amalgamated.hpp"
#include "qproj/analysis.hpp"

using namespace qproj;

TEST_CASE("weighted norms of constant grids have closed forms") {
  GridSignal g = make_grid(1, 64, 8.0);
  for (auto& v : g.values) v = cplx{3.0, 0.0};
  REQUIRE(weighted_norm(g, 2.0, WeightMode::unweighted, vecd{}) == Catch::Approx(12.0));
  REQUIRE(weighted_norm(g, 1.0, WeightMode::unweighted, vecd{}) == Catch::Approx(48.0));
  const double inf = std::numeric_limits<double>::infinity();
  REQUIRE(weighted_norm(g, inf, WeightMode::unweighted, vecd{}) == Catch::Approx(3.0));
  // Interior box [-4,4]: count the covered cells rather than assuming 2L.
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.n; ++i)
    if (std::abs(g.coord(i)) <= 4.0 + 1e-12) ++count;
  REQUIRE(weighted_norm(g, 2.0, WeightMode::unweighted, vecd{}, Region::interior) ==
          Catch::Approx(3.0 * std::sqrt(double(count) * g.step())));

  GridSignal g2 = make_grid(2, 16, 4.0);
  for (auto& v : g2.values) v = cplx{2.0, 0.0};
  REQUIRE(weighted_norm(g2, 2.0, WeightMode::unweighted, vecd{}) == Catch::Approx(16.0));
}

TEST_CASE("dividing by the weight equals the unweighted norm of g/w") {
  GridSignal g = make_grid(1, 128, 8.0);
  Rng rng(77);
  for (auto& v : g.values) v = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  Weight w = make_polynomial_weight(1, 1.0);
  const vecd ws = weight_grid_samples(g, w);
  GridSignal man = g;
  for (std::size_t i = 0; i < man.values.size(); ++i) man.values[i] /= ws[i];
  for (double p : {1.0, 2.0, 3.5}) {
    REQUIRE(weighted_norm(g, p, WeightMode::over_w, ws) ==
            Catch::Approx(weighted_norm(man, p, WeightMode::unweighted, vecd{})).epsilon(1e-12));
  }
  GridSignal mul = g;
  for (std::size_t i = 0; i < mul.values.size(); ++i) mul.values[i] *= ws[i];
  REQUIRE(weighted_norm(g, 2.0, WeightMode::times_w, ws) ==
          Catch::Approx(weighted_norm(mul, 2.0, WeightMode::unweighted, vecd{})).epsilon(1e-12));
}

TEST_CASE("order-zero modulus is the weighted norm of the signal") {
  Signal f = make_gaussian(1, 1.0, {0.2}, 1.0);
  Weight w = make_polynomial_weight(1, 0.5);
  ModulusOptions opt;
  opt.grid_n = 256;
  opt.grid_half = 8.0;
  const double m0 = modulus(f, 0, 1.0, 2.0, w, opt);
  GridSignal fg = sample_to_grid(f, opt.grid_half, opt.grid_n);
  REQUIRE(m0 == Catch::Approx(weighted_norm(fg, 2.0, WeightMode::over_w, w)).epsilon(1e-12));
}

TEST_CASE("first-order modulus matches a dense brute-force sweep") {
  Signal f = make_gaussian(1, 1.0, {0.0}, 1.0);
  Weight w = make_unit_weight(1);
  ModulusOptions opt;
  opt.grid_n = 512;
  opt.grid_half = 8.0;
  const double h = 0.25;
  const double lib = modulus(f, 1, h, 2.0, w, opt);
  auto feval = [&f](const vecd& x) { return f.eval(x); };
  double brute = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double delta = h * double(i) / 200.0;
    GridSignal g = detail::sampled_difference(feval, 1, 1, {delta}, opt.grid_n, opt.grid_half);
    brute = std::max(brute, weighted_norm(g, 2.0, WeightMode::unweighted, vecd{}));
  }
  REQUIRE(lib <= brute + 1e-9);
  REQUIRE(brute <= 1.02 * lib);
}

TEST_CASE("modulus rejects steps that walk off the evaluation grid") {
  Signal f = make_gaussian(1, 1.0, {0.0}, 1.0);
  Weight w = make_unit_weight(1);
  REQUIRE_THROWS_AS(modulus(f, 2, 9.0, 2.0, w), config_error);
}

TEST_CASE("dilation-adapted modulus for isotropic dilations is the plain modulus") {
  Signal f = make_gaussian(2, 1.0, {0.0, 0.0}, 1.0);
  Weight w = make_unit_weight(2);
  ModulusOptions opt;
  opt.grid_n = 128;
  opt.grid_half = 8.0;
  opt.random_dirs = 4;
  DilationMatrix m_iso{{2.0, 2.0}};
  const double aniso = anisotropic_modulus(f, 2, m_iso, 1, 2.0, w, opt);
  const double iso = modulus(f, 2, m_iso.op_norm_inverse_power(1), 2.0, w, opt);
  REQUIRE(aniso == Catch::Approx(iso).epsilon(1e-12));
  // Anisotropic steps are shorter along the faster axis, so the adapted
  // modulus never exceeds the isotropic one at the weakest-axis radius.
  DilationMatrix m_aniso{{2.0, 3.0}};
  const double a2 = anisotropic_modulus(f, 2, m_aniso, 1, 2.0, w, opt);
  const double i2 = modulus(f, 2, m_aniso.op_norm_inverse_power(1), 2.0, w, opt);
  REQUIRE(a2 <= i2 * 1.05);
}

TEST_CASE("sampled differences reproduce the binomial stencil") {
  Signal f = make_gaussian(1, 1.0, {0.1}, 1.3);
  auto feval = [&f](const vecd& x) { return f.eval(x); };
  const double delta = 0.4;
  GridSignal g = detail::sampled_difference(feval, 1, 2, {delta}, 64, 8.0);
  for (std::size_t i : {std::size_t(5), std::size_t(31), std::size_t(50)}) {
    const double x = g.coord(i);
    const cplx want =
        f.eval({x + 2.0 * delta}) - 2.0 * f.eval({x + delta}) + f.eval({x});
    REQUIRE(std::abs(g.values[i] - want) < 1e-14);
  }
}

TEST_CASE("unit-step smoothing against direct integrals") {
  Signal f = make_gaussian(1, 1.0, {0.0}, 1.0);
  Signal s1 = steklov_smooth(f, 1);
  // Order 1 at x: mean of f over [x, x+1]; at 0 this is the frozen constant.
  REQUIRE(s1.eval({0.0}).real() == Catch::Approx(0.49390555890759856).margin(1e-9));
  const double at07 =
      integrate([&](double t) { return f.eval({0.7 + t}).real(); }, 0.0, 1.0, 32);
  REQUIRE(s1.eval({0.7}).real() == Catch::Approx(at07).margin(1e-9));

  Signal s2 = steklov_smooth(f, 2);
  auto beta2 = [](double t) { return t <= 0.0 || t >= 2.0 ? 0.0 : (t <= 1.0 ? t : 2.0 - t); };
  const double want2 =
      2.0 * integrate_panels([&](double t) { return f.eval({t}).real() * beta2(t); }, 0.0, 2.0, 16, 4) -
      integrate_panels([&](double t) { return f.eval({2.0 * t}).real() * beta2(t); }, 0.0, 2.0, 16, 4);
  REQUIRE(s2.eval({0.0}).real() == Catch::Approx(want2).margin(1e-9));
}

TEST_CASE("band truncation error decays at the spectral rate of the signal") {
  Signal f = make_matern_like(1, 1.0, make_unit_weight(1));
  GridSignal fg = sample_to_grid(f, 32.0, 8192);
  Weight w = make_unit_weight(1);
  vecd sig{4.0, 8.0, 16.0, 32.0}, err;
  for (double s : sig) err.push_back(best_approx_band(fg, s, 2.0, w));
  for (std::size_t i = 1; i < err.size(); ++i) REQUIRE(err[i] < err[i - 1]);
  // Spectrum (1+xi^2)^{-1} in L2: tail mass beyond sigma scales like sigma^{-3/2}.
  double mx = 0, my = 0, sxx = 0, sxy = 0;
  vecd xs, ys;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    xs.push_back(std::log(sig[i]));
    ys.push_back(std::log(err[i]));
    mx += xs.back();
    my += ys.back();
  }
  mx /= double(xs.size());
  my /= double(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += sqr(xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  REQUIRE(slope == Catch::Approx(-1.5).margin(0.2));
}

TEST_CASE("band truncation vanishes for signals inside the kept band") {
  GridSignal fg = sample_to_grid(make_bandlimited_signal(1, 0.2), 16.0, 2048);
  Weight w = make_unit_weight(1);
  REQUIRE(weighted_norm(fg, 2.0, WeightMode::unweighted, vecd{}) > 0.1);
  REQUIRE(best_approx_band(fg, 1.0, 2.0, w) < 1e-6);
}

TEST_CASE("band truncation rejects cutoffs beyond the grid Nyquist") {
  GridSignal fg = sample_to_grid(make_gaussian(1, 1.0, {0.0}, 1.0), 32.0, 8192);
  REQUIRE_THROWS_AS(best_approx_band(fg, 100.0, 2.0, make_unit_weight(1)), config_error);
}

TEST_CASE("spectral tail integral matches the analytic gaussian value") {
  Signal f = make_gaussian(1, 1.0, {0.0}, 1.0);
  GridSignal fg = sample_to_grid(f, 16.0, 2048);
  const vecd ws(fg.values.size(), 1.0);
  DilationMatrix M{{2.0}};
  const double q = 2.0, gamma = 1.0, delta = 0.5;
  vecd got;
  for (int j : {0, 1, 2}) {
    const double c = std::pow(2.0, j) * 0.5 * delta;
    const double oracle = std::pow(2.0, -j * q * gamma) * 2.0 *
                          integrate_panels(
                              [&](double xi) {
                                return std::pow(xi, q * gamma) * std::exp(-2.0 * kPi * xi * xi);
                              },
                              c, 8.0, 32, 16);
    const double tb = tail_bound(fg, ws, M, j, gamma, q, delta);
    got.push_back(tb);
    REQUIRE(tb == Catch::Approx(oracle).epsilon(0.10));
  }
  REQUIRE(got[0] > got[1]);
  REQUIRE(got[1] > got[2]);
}

TEST_CASE("spectral tail integral enforces its hypotheses and resolution") {
  Signal f = make_gaussian(1, 1.0, {0.0}, 1.0);
  GridSignal fg = sample_to_grid(f, 16.0, 2048);
  const vecd ws(fg.values.size(), 1.0);
  DilationMatrix M{{2.0}};
  REQUIRE_THROWS_AS(tail_bound(fg, ws, M, 0, 0.4, 2.0, 0.5), hypothesis_error);
  // A spatial spike has a flat spectrum: the integrand piles up at the grid
  // edge and the quadrature must refuse.
  GridSignal spike = make_grid(1, 256, 8.0);
  spike.values[spike.n / 2] = cplx{1.0, 0.0};
  const vecd ws2(spike.values.size(), 1.0);
  REQUIRE_THROWS_AS(tail_bound(spike, ws2, M, 0, 1.0, 2.0, 0.5), numerical_error);
}

TEST_CASE("rate fitting recovers exact geometric decay") {
  auto rep = fit_rate({0, 1, 2, 3}, {1.0, 0.25, 0.0625, 0.015625}, 2.0);
  REQUIRE(rep.fitted_slope == Catch::Approx(2.0).margin(1e-10));
  REQUIRE(rep.intercept == Catch::Approx(0.0).margin(1e-10));
  REQUIRE(rep.r2 == Catch::Approx(1.0).margin(1e-12));
  REQUIRE_FALSE(rep.degenerate);

  auto flat = fit_rate({0, 1, 2}, {1.0, 1.0, 1.0}, 2.0);
  REQUIRE(flat.fitted_slope == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(flat.r2 == Catch::Approx(1.0));
}

TEST_CASE("rate fitting with the critical log factor") {
  std::vector<int> js{1, 2, 3, 4, 5};
  vecd errs;
  for (int j : js) errs.push_back(std::pow(2.0, -1.5 * j) * std::sqrt(double(j)));
  auto rep = fit_rate(js, errs, 2.0, /*with_log_factor=*/true);
  REQUIRE(rep.with_log_factor);
  REQUIRE(rep.fitted_slope == Catch::Approx(1.5).margin(1e-10));
  REQUIRE(rep.r2 == Catch::Approx(1.0).margin(1e-12));
  // Without the factor the same data fits a shallower slope imperfectly.
  auto plain = fit_rate(js, errs, 2.0);
  REQUIRE(plain.fitted_slope < 1.5);
}

TEST_CASE("rate fitting flags floor-level errors and bad inputs") {
  auto rep = fit_rate({0, 1}, {1.0, 1e-20}, 2.0);
  REQUIRE(rep.degenerate);
  REQUIRE(rep.fitted_slope == 0.0);
  REQUIRE_THROWS_AS(fit_rate({0}, {1.0}, 2.0), std::invalid_argument);
  REQUIRE_THROWS_AS(fit_rate({0, 1}, {1.0, 0.5}, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(fit_rate({3, 3}, {1.0, 0.5}, 2.0), std::invalid_argument);
}

TEST_CASE("ratio stability statistics") {
  REQUIRE(ratio_stability({1.0, 2.0}, {0.5, 1.0}) == Catch::Approx(1.0));
  REQUIRE(ratio_stability({1.0, 4.0}, {1.0, 2.0}) == Catch::Approx(2.0));
  REQUIRE(std::isinf(ratio_stability({1.0, 1.0}, {1.0, 0.0})));
}

TEST_CASE("error curves decrease with the level for a smooth signal") {
  Signal f = make_gaussian(1, 1.0, {0.0}, 1.0);
  auto curve = error_curve(f, make_flat_top(1, 0.25, 0.45), DualFunctional::dirac(1),
                           DilationMatrix{{2.0}}, {0, 1, 2}, 2.0, make_unit_weight(1), 512, 8.0);
  REQUIRE(curve.size() == 3);
  for (const auto& pt : curve) {
    REQUIRE(pt.error > 0.0);
    REQUIRE_FALSE(pt.under_truncated);
  }
  REQUIRE(curve[1].error < curve[0].error);
  REQUIRE(curve[2].error < curve[1].error);
}
