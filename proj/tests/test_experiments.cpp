#include "catch_amalgamated.hpp"
#include "qproj/experiments.hpp"

using namespace qproj;

TEST_CASE("unknown experiment names are usage errors") {
  Config cfg;
  REQUIRE_THROWS_AS(run_experiment("no_such_experiment", cfg, false, "out"), config_error);
}

TEST_CASE("reconstruction passes on a reduced setup and echoes its config") {
  Config cfg;
  cfg.add_assignment("grid_n=512");
  cfg.add_assignment("grid_half=8");
  cfg.add_assignment("levels=0,1");
  auto R = run_experiment("reconstruction", cfg, false, "out");
  REQUIRE(R.name == "reconstruction");
  REQUIRE(R.criteria_pass);
  const std::string rep = R.report.dump();
  REQUIRE(rep.find("\"grid_n\": \"512\"") != std::string::npos);
  REQUIRE(rep.find("\"levels\": \"0,1\"") != std::string::npos);
  REQUIRE(rep.find("\"pass\": true") != std::string::npos);
  REQUIRE(R.csv.rfind("j,", 0) == 0);
  REQUIRE_FALSE(R.plot.empty());
  for (const auto& h : R.hypotheses) REQUIRE(h.status != "fail");
}

TEST_CASE("violated hypotheses abort unless forced, then are recorded") {
  Config cfg;
  cfg.add_assignment("p=1.5");  // sampling expansions need p >= 2
  cfg.add_assignment("levels=1,2");
  cfg.add_assignment("grid_n=2048");
  cfg.add_assignment("grid_half=16");
  REQUIRE_THROWS_AS(run_experiment("sampling_tail", cfg, false, "out"), hypothesis_error);

  auto forced = run_experiment("sampling_tail", cfg, true, "out");
  bool saw_fail = false;
  for (const auto& h : forced.hypotheses) saw_fail = saw_fail || h.status == "fail";
  REQUIRE(saw_fail);
  bool warned = false;
  for (const auto& line : forced.summary)
    warned = warned || line.find("despite failed hypothesis") != std::string::npos;
  REQUIRE(warned);
  REQUIRE(forced.report.dump().find("\"status\": \"fail\"") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical reports and curves") {
  auto make_cfg = [] {
    Config cfg;
    cfg.add_assignment("orders=1");
    cfg.add_assignment("levels=1,2,3");
    cfg.add_assignment("grid_n=2048");
    cfg.add_assignment("grid_half=16");
    return cfg;
  };
  auto a = run_experiment("weak_rate", make_cfg(), false, "out");
  auto b = run_experiment("weak_rate", make_cfg(), false, "out");
  REQUIRE(a.report.dump() == b.report.dump());
  REQUIRE(a.csv == b.csv);
  REQUIRE(a.plot == b.plot);
}

TEST_CASE("audit suites pass on their default configurations") {
  Config cfg;
  auto wa = run_experiment("weights_audit", cfg, false, "out");
  REQUIRE(wa.criteria_pass);
  Config cfg2;
  auto ca = run_experiment("compat_audit", cfg2, false, "out");
  REQUIRE(ca.criteria_pass);
}
