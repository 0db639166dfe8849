// Acceptance gate: one line per criterion, checked at pinned tolerances.
// Exit status is the number of failed criteria (0 = all pass).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qproj/experiments.hpp"

using namespace qproj;

namespace {

int failures = 0;

void verdict(int num, const std::string& label, bool ok, const std::string& detail) {
  std::printf("[%s] C%-2d %-34s %s\n", ok ? "PASS" : "FAIL", num, label.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double run_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Criterion lines the runner printed, joined for the one-line verdict.
std::string criterion_lines(const ExperimentResult& R, const std::string& filter = "") {
  std::string out;
  for (const auto& line : R.summary) {
    if (line.rfind("  [", 0) != 0) continue;
    if (!filter.empty() && line.find(filter) == std::string::npos) continue;
    const std::string body = line.substr(2);
    out += (out.empty() ? "" : " | ") + body;
  }
  return out;
}

std::string fmt(double v) { return detail::format_param(v); }

void c1_reconstruction() {
  bool ok = true;
  std::string detail;
  for (int dim : {1, 2})
    for (const std::string dual : {"dirac", "fn:flat_top:0.3:0.45"}) {
      const auto t0 = std::chrono::steady_clock::now();
      Config cfg;
      cfg.add_assignment("dim=" + std::to_string(dim));
      cfg.add_assignment("dual=" + dual);
      auto R = run_experiment("reconstruction", cfg, false, "acc_c1");
      const double secs = run_seconds(t0);
      ok = ok && R.criteria_pass && secs < 30.0;
      detail += (detail.empty() ? "" : " | ") + std::string("d=") + std::to_string(dim) + " " +
                dual + ": " + criterion_lines(R, "max interior sup error") + ", " + fmt(secs) + "s";
    }
  verdict(1, "band-limited reconstruction", ok, detail);
}

void c2_strict_rate() {
  const auto t0 = std::chrono::steady_clock::now();
  Config cfg;
  auto R = run_experiment("strict_rate", cfg, false, "acc_c2");
  const double secs = run_seconds(t0);
  verdict(2, "saturated decay rate (strict pair)", R.criteria_pass && secs < 60.0,
          criterion_lines(R) + " | " + fmt(secs) + "s");
}

void c3_weak_rates() {
  const Weight w = weight_from_id(1, "poly:0.25");
  const DilationMatrix M{{2.0}};
  const auto dual = DualFunctional::dirac(1);
  const std::vector<int> levels{1, 2, 3, 4, 5, 6};
  bool ok = true;
  std::string detail;
  const struct {
    int n;
    const char* signal;
    double lo, hi;
  } cases[] = {{1, "matern:1", 0.8, 1.2}, {2, "matern:3", 1.7, 2.3}};
  for (const auto& c : cases) {
    Signal f = signal_from_id(1, c.signal, w);
    auto kernel = make_weak_order_kernel(1, c.n, 0.35, 0.65);
    auto curve = error_curve(f, kernel, dual, M, levels, 2.0, w, 8192, 32.0);
    vecd errors;
    for (const auto& pt : curve) errors.push_back(pt.error);
    RateReport fit = fit_rate(levels, errors, M.theta());
    const bool in_window = fit.fitted_slope >= c.lo && fit.fitted_slope <= c.hi;
    const bool good_fit = fit.r2 >= 0.98 && !fit.degenerate;
    ok = ok && in_window && good_fit;
    detail += (detail.empty() ? "" : " | ") + std::string("n=") + std::to_string(c.n) +
              ": slope " + fmt(fit.fitted_slope) + " in [" + fmt(c.lo) + "," + fmt(c.hi) +
              "], r2 " + fmt(fit.r2);
  }
  verdict(3, "weak-order decay rates", ok, detail);
}

void c4_tail_stability() {
  Config cfg;
  auto R = run_experiment("sampling_tail", cfg, false, "acc_c4");
  verdict(4, "tail-bound ratio stability", R.criteria_pass, criterion_lines(R));
}

void c5_mixed_bound() {
  Config cfg;
  auto R = run_experiment("sampling_mixed", cfg, false, "acc_c5");
  verdict(5, "mixed smoothness+tail bound", R.criteria_pass, criterion_lines(R));
}

void c6_compat_detection() {
  const auto dual = DualFunctional::dirac(1);
  bool ok = true;
  std::string detail = "detected orders:";
  for (int n : {1, 2, 3}) {
    const int det = detect_weak_order(make_weak_order_kernel(1, n, 0.35, 0.65), dual);
    ok = ok && det == n;
    detail += " " + std::to_string(det);
  }
  const auto s_sinc = check_strict(make_sinc_tensor(1), dual, 0.45);
  const auto s_flat = check_strict(make_flat_top(1, 0.25, 0.45), dual, 0.25);
  const auto s_box = check_strict(make_flat_top(1, 0.25, 0.45), DualFunctional::box_average(1), 0.25);
  ok = ok && s_sinc.strict_pass && s_flat.strict_pass && !s_box.strict_pass;
  detail += "; strict sinc/dirac " + std::string(s_sinc.strict_pass ? "pass" : "FAIL") +
            ", flat/dirac " + std::string(s_flat.strict_pass ? "pass" : "FAIL") +
            ", flat/box defect " + fmt(s_box.max_defect) + " (must fail: " +
            (s_box.strict_pass ? "did not" : "fails") + ")";
  verdict(6, "compatibility detection", ok, detail);
}

void c7_moduli_properties() {
  Config cfg;
  auto R = run_experiment("moduli_props", cfg, false, "acc_c7");
  verdict(7, "modulus property suite", R.criteria_pass, criterion_lines(R, "brute"));
}

void c8_jackson_ratio() {
  Config cfg;
  auto R = run_experiment("jackson", cfg, false, "acc_c8");
  verdict(8, "band-approximation vs modulus", R.criteria_pass, criterion_lines(R));
}

void c9_weights_audit() {
  Config cfg;
  auto R = run_experiment("weights_audit", cfg, false, "acc_c9");
  verdict(9, "weight class audit", R.criteria_pass, criterion_lines(R, "membership"));
}

void c10_plumbing() {
  bool ok = true;
  std::string detail;

  std::vector<int> js{0, 1, 2, 3, 4, 5};
  vecd errs;
  for (int j : js) errs.push_back(3.7 * std::pow(2.0, -1.3 * j));
  const auto fit = fit_rate(js, errs, 2.0);
  vecd errs2;
  for (int j : js) errs2.push_back(std::pow(2.0, -1.5 * j) * std::sqrt(std::max(1.0, double(j))));
  const auto fit2 = fit_rate({1, 2, 3, 4, 5}, {errs2[1], errs2[2], errs2[3], errs2[4], errs2[5]},
                             2.0, true);
  const bool fit_ok = std::abs(fit.fitted_slope - 1.3) <= 1e-10 &&
                      std::abs(fit2.fitted_slope - 1.5) <= 1e-10;
  ok = ok && fit_ok;
  detail += "rate fit residuals " + fmt(std::abs(fit.fitted_slope - 1.3)) + "/" +
            fmt(std::abs(fit2.fitted_slope - 1.5));

  GridSignal g = make_grid(1, 1024, 16.0);
  Rng rng(99);
  for (auto& v : g.values) v = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  GridSignal back = inverse_spectrum(spectrum(g));
  double rt = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    rt = std::max(rt, std::abs(back.values[i] - g.values[i]));
  ok = ok && rt <= 1e-10;
  detail += "; fft round trip " + fmt(rt);

  GridSignal gg = make_grid(1, 4096, 32.0);
  for (std::size_t i = 0; i < gg.n; ++i)
    gg.values[i] = cplx{std::exp(-kPi * sqr(gg.coord(i))), 0.0};
  GridSignal spec = spectrum(gg);
  double sd = 0.0;
  for (std::size_t i = 0; i < spec.n; ++i)
    sd = std::max(sd, std::abs(spec.values[i] - cplx{std::exp(-kPi * sqr(spec.coord(i))), 0.0}));
  ok = ok && sd <= 1e-8;
  detail += "; gaussian self-duality " + fmt(sd);

  auto make_cfg = [] {
    Config cfg;
    cfg.add_assignment("orders=1");
    cfg.add_assignment("levels=1,2,3");
    cfg.add_assignment("grid_n=2048");
    cfg.add_assignment("grid_half=16");
    return cfg;
  };
  auto a = run_experiment("weak_rate", make_cfg(), false, "acc_c10");
  auto b = run_experiment("weak_rate", make_cfg(), false, "acc_c10");
  const bool det = a.report.dump() == b.report.dump() && a.csv == b.csv;
  ok = ok && det;
  detail += std::string("; reruns byte-identical: ") + (det ? "yes" : "NO");

  verdict(10, "plumbing exactness", ok, detail);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c1_reconstruction();
    c2_strict_rate();
    c3_weak_rates();
    c4_tail_stability();
    c5_mixed_bound();
    c6_compat_detection();
    c7_moduli_properties();
    c8_jackson_ratio();
    c9_weights_audit();
    c10_plumbing();
  } catch (const std::exception& e) {
    std::printf("[FAIL] unhandled exception: %s\n", e.what());
    ++failures;
  }
  std::printf("acceptance: %d/10 criteria passed (%.1f s total)\n", 10 - failures,
              run_seconds(t0));
  return failures;
}
