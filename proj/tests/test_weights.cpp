#include "catch_amalgamated.hpp"
#include "qproj/weights.hpp"
#include "qproj/kernels.hpp"

using namespace qproj;

TEST_CASE("polynomial weight values and class membership") {
  Weight w = make_polynomial_weight(1, 0.25);
  REQUIRE(w.eval({0.0}) == Catch::Approx(1.0));
  REQUIRE(w.eval({1.0}) == Catch::Approx(std::pow(2.0, 0.125)).epsilon(1e-14));
  REQUIRE(w.eval({-3.0}) == w.eval({3.0}));
  REQUIRE(w.alpha == Catch::Approx(0.25));
  for (double alpha : {0.25, 1.0, 2.5}) {
    Weight wa = make_polynomial_weight(1, alpha);
    auto rep = check_w_alpha_membership(wa, symmetric_sample_grid(1, 8.0, 17));
    REQUIRE(rep.pass);
    REQUIRE(rep.evenness_defect <= 1e-12);
    REQUIRE(rep.submult_defect <= 1e-12);
    REQUIRE(rep.dominant_defect <= 1e-12);
  }
  Weight w2 = make_polynomial_weight(2, 1.0);
  REQUIRE(check_w_alpha_membership(w2, symmetric_sample_grid(2, 6.0, 9)).pass);
}

TEST_CASE("unit weight is the trivial class member") {
  Weight u = make_unit_weight(1);
  REQUIRE(u.eval({123.0}) == 1.0);
  REQUIRE(u.band_limited);
  REQUIRE(u.alpha == 0.0);
  REQUIRE(check_w_alpha_membership(u, symmetric_sample_grid(1, 10.0, 11)).pass);
}

TEST_CASE("muckenhoupt constant of |x|^{1/2} on symmetric intervals (frozen oracle)") {
  // For u = |x|^sigma on intervals centered at the origin the A_2 average is
  // exactly 1/(1-sigma^2): 4/3 at sigma = 1/2, independent of the length.
  auto u = power_map(0.5);
  std::vector<Rect> rects;
  for (int k = -4; k <= 6; ++k) {
    const double h = std::pow(2.0, k);
    rects.push_back(Rect{{-h}, {h}});
  }
  auto res = ap_rectangle_constant(u, 2.0, rects, 64);
  REQUIRE(res.converged);
  REQUIRE(res.value == Catch::Approx(4.0 / 3.0).epsilon(1e-4));
  for (double c : res.per_rect) REQUIRE(c == Catch::Approx(4.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("off-center intervals raise the constant but stay finite") {
  auto u = power_map(0.5);
  auto res = ap_rectangle_constant(u, 2.0, {Rect{{-2.0}, {6.0}}}, 64);
  REQUIRE(std::isfinite(res.value));
  REQUIRE(res.value > 4.0 / 3.0);
  REQUIRE(res.value < 2.0);
}

TEST_CASE("|x|^{3/2} at p = 2: dual power is non-integrable, doubling diverges") {
  auto u = power_map(1.5);
  auto c32 = ap_rectangle_constant(u, 2.0, {Rect{{-1.0}, {1.0}}}, 48);
  auto c64 = ap_rectangle_constant(u, 2.0, {Rect{{-1.0}, {1.0}}}, 96);
  REQUIRE_FALSE(c32.converged);
  REQUIRE(c64.value > 1.1 * c32.value);
}

TEST_CASE("per-variable constants agree with the one-dimensional reduction") {
  // w^{-2} for w = (1+|x|^2)^{1/8} along axis 0 with x_2 frozen.
  Weight w = make_polynomial_weight(2, 0.25);
  auto wpow = [&w](const vecd& x) { return std::pow(w.eval(x), -2.0); };
  std::vector<std::pair<double, double>> intervals;
  for (int k = -2; k <= 5; ++k) intervals.push_back({-std::pow(2.0, k), std::pow(2.0, k)});
  auto res = ap_rectangle_per_variable(wpow, 2.0, 0, {1.5}, intervals, 64);
  REQUIRE(res.converged);
  REQUIRE(res.value >= 1.0);
  REQUIRE(res.value < 1.5);
}

TEST_CASE("band-limited weight: certified truncation and two-sided closeness") {
  Weight base = make_polynomial_weight(1, 0.25);
  auto v = make_autocorrelation_mollifier(1, 0.125);
  Weight w = make_bandlimited_weight(base, v);
  REQUIRE(w.band_limited);
  REQUIRE(w.spectrum_radius == Catch::Approx(0.125));
  REQUIRE(w.truncation_residual < 1e-6);
  REQUIRE(w.l1_inv_dominant > 0.0);
  REQUIRE(w.l1_dominant >= w.l1_inv_dominant);
  for (double x : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double ratio = w.eval({x}) / base.eval({x});
    REQUIRE(ratio >= w.l1_inv_dominant - 1e-9);
    REQUIRE(ratio <= w.l1_dominant + 1e-9);
  }
}

TEST_CASE("slow-decay mollifiers are rejected for tight weight construction") {
  Weight base = make_polynomial_weight(1, 0.25);
  auto fejer = make_fejer_mollifier(1, 0.125);
  REQUIRE_THROWS(make_bandlimited_weight(base, fejer));
}

TEST_CASE("dominant bound is stable under contracting dilations") {
  Weight w = make_polynomial_weight(1, 1.0);
  DilationMatrix M{{2.0}};
  const double c = check_dilation_stability(w, M, 4, symmetric_sample_grid(1, 8.0, 17));
  REQUIRE(c <= 1.0 + 1e-9);
  REQUIRE(c > 0.9);
}

TEST_CASE("weight ids parse") {
  REQUIRE(weight_from_id(1, "unit").kind == WeightKind::Unit);
  REQUIRE(weight_from_id(1, "poly:0.25").alpha == Catch::Approx(0.25));
  REQUIRE(weight_from_id(2, "poly:1").dim == 2);
  REQUIRE_THROWS_AS(weight_from_id(1, "exp:1"), config_error);
}
