#include "catch_amalgamated.hpp"
#include "qproj/compat.hpp"

using namespace qproj;

TEST_CASE("strict compatibility: point sampling pairs") {
  auto dirac = DualFunctional::dirac(1);
  auto rep = check_strict(make_flat_top(1, 0.25, 0.45), dirac, 0.25);
  REQUIRE(rep.strict_pass);
  REQUIRE(rep.max_defect == 0.0);
  REQUIRE(rep.support_ok);

  auto sinc = check_strict(make_sinc_tensor(1), dirac, 0.45);
  REQUIRE(sinc.strict_pass);
  REQUIRE(sinc.max_defect < 1e-12);

  auto meyer = check_strict(make_meyer_scaling(1), dirac, 0.33);
  REQUIRE(meyer.strict_pass);
}

TEST_CASE("strict compatibility fails for averaged samples") {
  auto rep = check_strict(make_flat_top(1, 0.25, 0.45), DualFunctional::box_average(1), 0.25);
  REQUIRE_FALSE(rep.strict_pass);
  REQUIRE(rep.max_defect > 0.1);
}

TEST_CASE("function-dual pairing restores strictness") {
  // Pairing a flat-top kernel against itself: theta conj(theta) = 1 on the
  // shared plateau.
  auto k = make_flat_top(1, 0.3, 0.45);
  auto dual = DualFunctional::function(make_flat_top(1, 0.3, 0.45));
  auto rep = check_strict(k, dual, 0.3);
  REQUIRE(rep.strict_pass);
}

TEST_CASE("weak order detection is exact for constructed kernels") {
  auto dirac = DualFunctional::dirac(1);
  for (int n : {1, 2, 3})
    REQUIRE(detect_weak_order(make_weak_order_kernel(1, n, 0.35, 0.65), dirac) == n);
  // Strict pairs have no defect near 0: the probe exhausts its order budget.
  REQUIRE(detect_weak_order(make_flat_top(1, 0.25, 0.45), dirac) == 6);
  // Box average against a flat-top: the phase ramp gives order exactly 1.
  REQUIRE(detect_weak_order(make_flat_top(1, 0.25, 0.45), DualFunctional::box_average(1)) == 1);
}

TEST_CASE("defect derivative at 0 for the box pair equals -pi i (frozen oracle)") {
  auto table = compat_derivative_table(make_flat_top(1, 0.25, 0.45),
                                       DualFunctional::box_average(1), 1);
  REQUIRE(table.size() == 2);  // orders 0 and 1
  REQUIRE(std::abs(table[0].value) < 1e-9);
  const cplx d1 = table[1].value;
  REQUIRE(std::abs(d1 - cplx{0.0, -kPi}) < 2e-3);
}

TEST_CASE("lattice moments: compact spectra vanish to all orders") {
  REQUIRE(check_strang_fix(make_flat_top(1, 0.25, 0.45)) == -1);
  REQUIRE(check_strang_fix(make_meyer_scaling(1)) == -1);
  REQUIRE(check_strang_fix(make_weak_order_kernel(1, 2, 0.35, 0.65)) == -1);
}

TEST_CASE("lattice moments: spectrum reaching past the unit cell fails finitely") {
  // Artificial kernel whose spectrum extends to 1.2: theta(1) != 0, so the
  // moment condition already fails at order 0 on l = +-1.
  KernelProfile p;
  p.theta = [](double xi) { return cplx{detail::flat_top_profile(xi, 0.8, 1.2), 0.0}; };
  p.support = 1.2;
  p.flat_radius = 0.8;
  BandLimitedKernel wide(1, p, "wide_test_kernel", -1);
  const int order = check_strang_fix(wide, 2);
  REQUIRE(order >= 0);
  REQUIRE(order == 0);
}

TEST_CASE("aggregate pair report") {
  auto rep = compat_report(make_flat_top(1, 0.25, 0.45), DualFunctional::dirac(1), 0.25);
  REQUIRE(rep.kernel_id == "flat_top:0.25:0.45");
  REQUIRE(rep.dual_id == "dirac");
  REQUIRE(rep.strict.strict_pass);
  REQUIRE(rep.weak_order == 6);
  REQUIRE(rep.strang_fix_order == -1);
  REQUIRE_FALSE(rep.derivative_table.empty());

  auto weak = compat_report(make_weak_order_kernel(1, 2, 0.35, 0.65), DualFunctional::dirac(1), 0.25);
  REQUIRE_FALSE(weak.strict.strict_pass);
  REQUIRE(weak.weak_order == 2);
}

TEST_CASE("two-dimensional pairs classify axis-wise") {
  auto rep = compat_report(make_flat_top(2, 0.25, 0.45), DualFunctional::dirac(2), 0.25);
  REQUIRE(rep.strict.strict_pass);
  REQUIRE(detect_weak_order(make_weak_order_kernel(2, 1, 0.35, 0.65), DualFunctional::dirac(2)) == 1);
}
