// qproj: config-driven runner for band-limited quasi-projection experiments.
//
// Subcommands:
//   apply   apply Q_j to a signal, exporting the coefficient lattice and grid
//   compat  classify a kernel/dual pair (strict, weak order, lattice moments)
//   rates   run a named experiment (error curves, rate fits, property audits)
//   audit   shorthand for the weights/compat audit experiments
//   report  pretty-print a previously written .report.json
//
// Exit codes: 0 success, 1 usage/config error, 2 failed hypothesis or failed
// experiment criteria, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qproj/experiments.hpp"

namespace {

using namespace qproj;

/// Environment block embedded in every report: stable across reruns of the
/// same build, so byte-identical outputs remain byte-identical.
Json environment_json() {
  Json env = Json::object();
  env.set("tool", "qproj").set("version", "1.0.0");
#if defined(__VERSION__)
  env.set("compiler", std::string("gcc ") + __VERSION__);
#endif
  return env;
}

void print_summary(const ExperimentResult& R) {
  for (const auto& line : R.summary) std::cout << line << "\n";
  for (const auto& h : R.hypotheses) {
    if (h.status == "assumed")
      std::cout << "note: hypothesis assumed, not machine-verified: " << h.name << " (" << h.detail
                << ")\n";
    else if (h.status == "fail")
      std::cout << "warning: hypothesis failed (run forced): " << h.name << " (" << h.detail
                << ")\n";
  }
}

/// Run one experiment and write <out>.report.json / .curve.csv / .plot.gp.
int run_named_experiment(const std::string& name, const std::vector<std::string>& assigns,
                         const std::string& config_file, std::string out, bool force) {
  Config cfg;
  if (!config_file.empty()) cfg = Config::from_file(config_file);
  for (const auto& kv : assigns) cfg.add_assignment(kv);
  std::string experiment = name;
  if (experiment.empty()) experiment = cfg.get_string("experiment", "");
  if (experiment.empty())
    throw config_error("no experiment named: pass one as an argument or set experiment= in the config");
  if (out.empty()) out = experiment;

  ExperimentResult R = run_experiment(experiment, cfg, force, out);
  R.report.set("environment", environment_json());

  const auto unread = cfg.unread_keys();
  if (!unread.empty()) {
    std::string all;
    for (const auto& k : unread) all += (all.empty() ? "" : ", ") + k;
    std::cout << "warning: unused config keys: " << all << "\n";
  }

  write_text_file(out + ".report.json", R.report.dump() + "\n");
  std::cout << "wrote " << out << ".report.json\n";
  if (!R.csv.empty()) {
    write_text_file(out + ".curve.csv", R.csv);
    std::cout << "wrote " << out << ".curve.csv\n";
  }
  if (!R.plot.empty()) {
    write_text_file(out + ".plot.gp", R.plot);
    std::cout << "wrote " << out << ".plot.gp\n";
  }
  print_summary(R);
  return R.criteria_pass ? 0 : 2;
}

int run_apply(const std::string& kernel_id, const std::string& dual_id,
              const std::string& dilation, int level, const std::string& signal_id,
              const std::string& weight_id, int dim, std::size_t grid_n, double half_width,
              double tail_tol, const std::string& out) {
  auto kernel = kernel_from_id(dim, kernel_id);
  auto dual = dual_from_id(dim, dual_id);
  vecd diag;
  std::stringstream ss(dilation);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) diag.push_back(std::stod(tok));
  if (int(diag.size()) == 1 && dim > 1) diag.assign(std::size_t(dim), diag[0]);
  if (int(diag.size()) != dim) throw config_error("apply: dilation entries must match --dim");
  DilationMatrix M{diag};
  Weight w = weight_from_id(dim, weight_id);
  Signal f = signal_from_id(dim, signal_id, w);

  OperatorApplication app =
      apply_operator(f, kernel, dual, M, level, grid_n, half_width, tail_tol);

  // Lattice export: JSON header describing a raw little-endian block of
  // interleaved (re, im) doubles in row-major index order.
  const CoefficientLattice& lat = app.coeffs;
  Json kmin = Json::array(), kmax = Json::array();
  for (int l = 0; l < lat.dim; ++l) {
    kmin.push(Json(double(lat.kmin[l])));
    kmax.push(Json(double(lat.kmax[l])));
  }
  Json header = Json::object();
  header.set("kernel", kernel.id())
      .set("dual", lat.dual_id)
      .set("signal", f.id)
      .set("weight", w.id)
      .set("dim", lat.dim)
      .set("level", lat.level)
      .set("kmin", std::move(kmin))
      .set("kmax", std::move(kmax))
      .set("count", double(lat.size()))
      .set("layout", "row-major")
      .set("dtype", "complex128 interleaved little-endian")
      .set("data_file", out + ".lattice.bin")
      .set("max_abs", lat.max_abs())
      .set("boundary_max_abs", app.boundary_coeff_max)
      .set("residual_estimate", lat.residual_estimate)
      .set("under_truncated", lat.under_truncated)
      .set("synthesis_tail_residual", app.tail_residual)
      .set("kernel_radius", app.kernel_radius)
      .set("radius_certified", app.radius_certified)
      .set("quadrature_converged", app.quadrature_converged)
      .set("quadrature_drift", app.quadrature_drift)
      .set("environment", environment_json());
  write_text_file(out + ".lattice.json", header.dump() + "\n");

  std::ofstream bin(out + ".lattice.bin", std::ios::binary);
  if (!bin) throw config_error("apply: cannot open " + out + ".lattice.bin");
  for (const cplx& c : lat.values) {
    const double re = c.real(), im = c.imag();
    bin.write(reinterpret_cast<const char*>(&re), sizeof re);
    bin.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
  bin.close();
  write_grid_csv(out + ".grid.csv", app.approximation);

  std::cout << "wrote " << out << ".lattice.json, " << out << ".lattice.bin, " << out
            << ".grid.csv\n";
  std::printf("lattice %zu coefficients, max |c| = %.6g, boundary max = %.6g\n", lat.size(),
              lat.max_abs(), app.boundary_coeff_max);
  if (lat.under_truncated)
    std::cout << "warning: UNDER-TRUNCATED lattice (boundary coefficients above tolerance)\n";
  if (!app.quadrature_converged)
    std::cout << "warning: coefficient quadrature drift " << app.quadrature_drift
              << " above tolerance\n";
  return 0;
}

int run_compat(const std::string& kernel_id, const std::string& dual_id, double delta, int order,
               int dim, const std::string& json_out) {
  auto kernel = kernel_from_id(dim, kernel_id);
  auto dual = dual_from_id(dim, dual_id);
  CompatReport rep = compat_report(kernel, dual, delta, 6, order);

  std::printf("pair: %s x %s\n", rep.kernel_id.c_str(), rep.dual_id.c_str());
  std::printf("strict on |xi| <= %g: %s (max defect %.3g, support margin %.3g)\n", rep.strict.radius,
              rep.strict.strict_pass ? "yes" : "no", rep.strict.max_defect,
              rep.strict.support_margin);
  if (rep.weak_order >= 0)
    std::printf("weak order: %d\n", rep.weak_order);
  else
    std::printf("weak order: none detected up to the probe limit\n");
  if (rep.strang_fix_order < 0)
    std::printf("lattice moments: vanish to all orders (spectrum inside the unit cell)\n");
  else
    std::printf("lattice moments: first failure at order %d\n", rep.strang_fix_order);
  std::printf("defect derivatives at 0 (multi-index : value):\n");
  for (const auto& e : rep.derivative_table) {
    std::string beta;
    for (std::size_t i = 0; i < e.beta.size(); ++i)
      beta += (i ? "," : "") + std::to_string(e.beta[i]);
    std::printf("  (%s) : %.10g %+.10gi\n", beta.c_str(), e.value.real(), e.value.imag());
  }

  if (!json_out.empty()) {
    Json table = Json::array();
    for (const auto& e : rep.derivative_table) {
      std::string beta;
      for (std::size_t i = 0; i < e.beta.size(); ++i)
        beta += (i ? "," : "") + std::to_string(e.beta[i]);
      Json row = Json::object();
      row.set("beta", beta).set("re", e.value.real()).set("im", e.value.imag());
      table.push(std::move(row));
    }
    Json strict = Json::object();
    strict.set("pass", rep.strict.strict_pass)
        .set("max_defect", rep.strict.max_defect)
        .set("radius", rep.strict.radius)
        .set("support_ok", rep.strict.support_ok)
        .set("support_margin", rep.strict.support_margin);
    Json j = Json::object();
    j.set("kernel", rep.kernel_id)
        .set("dual", rep.dual_id)
        .set("strict", std::move(strict))
        .set("weak_order", rep.weak_order)
        .set("lattice_moment_order", rep.strang_fix_order)
        .set("defect_derivatives", std::move(table))
        .set("environment", environment_json());
    write_text_file(json_out, j.dump() + "\n");
    std::cout << "wrote " << json_out << "\n";
  }
  return 0;
}

int run_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("report: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error("report: " + path + " is not valid JSON: " + e.what());
  }

  std::cout << "experiment: " << j.value("experiment", std::string("?")) << "\n";
  if (j.contains("config") && j["config"].is_object() && !j["config"].empty()) {
    std::cout << "config:\n";
    for (auto it = j["config"].begin(); it != j["config"].end(); ++it)
      std::cout << "  " << it.key() << " = " << it.value().dump() << "\n";
  }
  if (j.contains("hypotheses"))
    for (const auto& h : j["hypotheses"])
      std::cout << "  hyp [" << h.value("status", std::string("?")) << "] "
                << h.value("name", std::string("?")) << ": " << h.value("detail", std::string())
                << "\n";
  if (j.contains("criteria"))
    for (const auto& c : j["criteria"]) {
      const bool ok = c.value("pass", false);
      std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << c.value("name", std::string("?"))
                << " = " << c["value"].dump() << "  (want: " << c.value("requirement", std::string())
                << ")\n";
    }
  const bool pass = j.value("pass", false);
  std::cout << (pass ? "PASS" : "FAIL") << " " << j.value("experiment", std::string("?")) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band-limited quasi-projection operators: experiments and audits"};
  app.require_subcommand(1);

  // ---- apply ----
  auto* apply = app.add_subcommand("apply", "apply Q_j f and export lattice + grid");
  std::string ap_kernel = "flat_top:0.25:0.45", ap_dual = "dirac", ap_dilation = "2";
  std::string ap_signal = "bandlimited:0.2", ap_weight = "unit", ap_out = "apply_out";
  int ap_level = 0, ap_dim = 1;
  std::size_t ap_grid_n = 1024;
  double ap_half = 8.0, ap_tail_tol = 1e-10;
  apply->add_option("--kernel", ap_kernel, "kernel id (e.g. flat_top:0.25:0.45, sinc, meyer)");
  apply->add_option("--dual", ap_dual, "dual id (dirac, box, fn:<kernel-id>)");
  apply->add_option("--dilation", ap_dilation, "diagonal entries, comma separated");
  apply->add_option("--level", ap_level, "dilation level j >= 0");
  apply->add_option("--signal", ap_signal, "signal id (gaussian, bandlimited:rho, matern:a, trig)");
  apply->add_option("--weight", ap_weight, "weight id (unit, poly:alpha)");
  apply->add_option("--dim", ap_dim, "dimension (1 or 2)");
  apply->add_option("--grid-n", ap_grid_n, "grid points per axis (power of 2)");
  apply->add_option("--half-width", ap_half, "grid half-width L");
  apply->add_option("--tail-tol", ap_tail_tol, "lattice/synthesis truncation tolerance");
  apply->add_option("--out", ap_out, "output path prefix");

  // ---- compat ----
  auto* compat = app.add_subcommand("compat", "classify a kernel/dual pair");
  std::string cp_kernel = "flat_top:0.25:0.45", cp_dual = "dirac", cp_json;
  double cp_delta = 0.25;
  int cp_order = 3, cp_dim = 1;
  compat->add_option("--kernel", cp_kernel, "kernel id");
  compat->add_option("--dual", cp_dual, "dual id");
  compat->add_option("--delta", cp_delta, "strict-compatibility radius delta");
  compat->add_option("--order", cp_order, "derivative table order");
  compat->add_option("--dim", cp_dim, "dimension (1 or 2)");
  compat->add_option("--json", cp_json, "also write a JSON report to this path");

  // ---- rates / audit ----
  std::string rt_name, rt_config, rt_out;
  bool rt_force = false;
  auto* rates = app.add_subcommand("rates", "run a named experiment");
  rates->add_option("experiment", rt_name,
                    "one of: reconstruction, strict_rate, weak_rate, sampling_tail, "
                    "sampling_mixed, jackson, moduli_props, weights_audit, compat_audit");
  rates->add_option("--config", rt_config, "key=value config file");
  rates->add_option("--out", rt_out, "output path prefix (default: experiment name)");
  rates->add_flag("--force", rt_force, "run even if a hypothesis fails (recorded in the report)");
  rates->allow_extras();  // trailing key=value assignments

  std::string au_name, au_config, au_out;
  bool au_force = false;
  auto* audit = app.add_subcommand("audit", "run the weights/compat audit suites");
  audit->add_option("suite", au_name, "weights or compat")->required();
  audit->add_option("--config", au_config, "key=value config file");
  audit->add_option("--out", au_out, "output path prefix");
  audit->add_flag("--force", au_force, "run even if a hypothesis fails");
  audit->allow_extras();

  // ---- report ----
  auto* report = app.add_subcommand("report", "pretty-print an existing .report.json");
  std::string rp_path;
  report->add_option("file", rp_path, "path to a .report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (apply->parsed())
      return run_apply(ap_kernel, ap_dual, ap_dilation, ap_level, ap_signal, ap_weight, ap_dim,
                       ap_grid_n, ap_half, ap_tail_tol, ap_out);
    if (compat->parsed()) return run_compat(cp_kernel, cp_dual, cp_delta, cp_order, cp_dim, cp_json);
    if (rates->parsed())
      return run_named_experiment(rt_name, rates->remaining(), rt_config, rt_out, rt_force);
    if (audit->parsed()) {
      std::string name = au_name == "weights" ? "weights_audit"
                         : au_name == "compat" ? "compat_audit"
                                               : au_name;
      return run_named_experiment(name, audit->remaining(), au_config, au_out, au_force);
    }
    if (report->parsed()) return run_report(rp_path);
  } catch (const hypothesis_error& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
