#include "catch_amalgamated.hpp"
#include "qproj/quadrature.hpp"

using namespace qproj;

TEST_CASE("gauss-legendre weights sum to 2 and nodes are symmetric") {
  for (int n : {1, 2, 3, 8, 33, 64}) {
    const auto& g = gauss_legendre(n);
    double s = 0.0;
    for (double w : g.w) s += w;
    REQUIRE(s == Catch::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < n; ++i) REQUIRE(g.x[i] == Catch::Approx(-g.x[n - 1 - i]).margin(1e-14));
    for (int i = 1; i < n; ++i) REQUIRE(g.x[i] > g.x[i - 1]);
  }
}

TEST_CASE("n-point rule is exact for polynomials of degree 2n-1") {
  // int_0^1 x^7 dx = 1/8 with n = 4.
  const double v = integrate([](double x) { return std::pow(x, 7); }, 0.0, 1.0, 4);
  REQUIRE(v == Catch::Approx(0.125).epsilon(1e-14));
  // Degree 31 with n = 16: int_{-1}^{1} x^30 dx = 2/31.
  const double w = integrate([](double x) { return std::pow(x, 30); }, -1.0, 1.0, 16);
  REQUIRE(w == Catch::Approx(2.0 / 31.0).epsilon(1e-13));
}

TEST_CASE("box average of the unit gaussian (frozen oracle)") {
  // int_0^1 exp(-pi t^2) dt = erf(sqrt(pi))/2, evaluated independently.
  const double oracle = 0.49390555890759856;
  const double v = integrate([](double t) { return std::exp(-kPi * t * t); }, 0.0, 1.0, 32);
  REQUIRE(v == Catch::Approx(oracle).epsilon(1e-14));
  const double vp = integrate_panels([](double t) { return std::exp(-kPi * t * t); }, 0.0, 1.0, 8, 16);
  REQUIRE(vp == Catch::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("panel composition matches the one-shot rule on smooth integrands") {
  auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-0.25 * x * x); };
  const double a = integrate(f, -2.0, 5.0, 96);
  const double b = integrate_panels(f, -2.0, 5.0, 16, 24);
  REQUIRE(a == Catch::Approx(b).epsilon(1e-12));
}

TEST_CASE("complex integrands: full oscillation integrates to zero") {
  const cplx v = integrate([](double t) { return std::polar(1.0, 2.0 * kPi * t); }, 0.0, 1.0, 24);
  REQUIRE(std::abs(v) < 1e-14);
}

TEST_CASE("graded rule absorbs algebraic singularities") {
  // int_0^1 x^{-1/2} dx = 2 (singularity at the left endpoint). The cubic
  // substitution leaves a t^{1/2} factor, so convergence is ~n^{-3}, not
  // spectral: assert the measured accuracy and the decay rate.
  auto inv_sqrt = [](double x) { return 1.0 / std::sqrt(std::abs(x)); };
  const double a = integrate_graded(inv_sqrt, 0.0, 1.0, 0.0, 48);
  REQUIRE(a == Catch::Approx(2.0).margin(1e-5));
  const double a2 = integrate_graded(inv_sqrt, 0.0, 1.0, 0.0, 96);
  REQUIRE(std::abs(a2 - 2.0) < std::abs(a - 2.0) / 4.0);
  // int_{-1}^{1} |x|^{1/2} dx = 4/3 (interior singularity).
  const double b =
      integrate_graded([](double x) { return std::sqrt(std::abs(x)); }, -1.0, 1.0, 0.0, 48);
  REQUIRE(b == Catch::Approx(4.0 / 3.0).epsilon(1e-12));
  // Singularity outside the interval falls back to the plain rule.
  const double c = integrate_graded([](double x) { return x * x; }, 1.0, 2.0, 0.0, 16);
  REQUIRE(c == Catch::Approx(7.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("order bounds are enforced") {
  REQUIRE_THROWS(gauss_legendre(0));
  REQUIRE_THROWS(gauss_legendre(5000));
}
