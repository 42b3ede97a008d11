#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cipc/sweep.hpp"

using namespace cipc;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

SchemeConfig fig_cfg(Scheme scheme) {
  SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.q = 1.0;
  cfg.p_a_max = 1.0;
  cfg.p_b_max = 1.0;
  cfg.rate = 0.5;
  cfg.epsilon = 0.1;
  return cfg;
}

}  // namespace

TEST_CASE("sweep spec parsing and grids") {
  const SweepSpec s = SweepSpec::parse("tau:0:4:5:linear");
  CHECK(s.variable == SweepVariable::tau);
  CHECK(s.points == 5);
  const std::vector<double> g = s.grid();
  CHECK(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(g.back() == 4.0);

  const SweepSpec lg = SweepSpec::parse("q:0.1:10:3:log");
  const std::vector<double> lgrid = lg.grid();
  CHECK(lgrid[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lgrid.back() == 10.0);

  CHECK_THROWS_AS(SweepSpec::parse("tau:0:4:5"), ConfigError);
  CHECK_THROWS_AS(SweepSpec::parse("bogus:0:4:5:linear"), ConfigError);
  CHECK_THROWS_AS(SweepSpec::parse("tau:4:0:5:linear"), ConfigError);
  CHECK_THROWS_AS(SweepSpec::parse("tau:0:4:1:linear"), ConfigError);
  CHECK_THROWS_AS(SweepSpec::parse("tau:0:4:5:geometric"), ConfigError);
  CHECK_THROWS_AS(SweepSpec::parse("q:0:4:5:log"), ConfigError);
}

TEST_CASE("fmt12 formatting") {
  CHECK(fmt12(0.5) == "0.5");
  CHECK(fmt12(1.0 / 3.0) == "0.333333333333");
  CHECK(fmt12(std::nan("")) == "nan");
}

TEST_CASE("detection curve csv: header, determinism and alpha column") {
  const SchemeConfig cfg = fig_cfg(Scheme::conventional);
  SystemParams sys;
  sys.phi = 0.1;
  SweepSpec sweep = SweepSpec::parse("tau:0:0.9:10:linear");  // all below sigma_w^2
  DetectionCurveOptions opt;
  const std::string csv = detection_curve_csv(cfg, sys, sweep, opt);
  const auto rows = parse_csv(csv);
  CHECK(rows[0] == std::vector<std::string>{"tau", "alpha", "beta", "xi"});
  CHECK(rows.size() == 11);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] == "1");  // alpha = 1 below the noise floor
    CHECK(rows[i][2] == "0");
  }

  SweepSpec full = SweepSpec::parse("tau:0:4:21:linear");
  DetectionCurveOptions mc_opt;
  mc_opt.with_mc = true;
  mc_opt.mc.n_draws = 20000;
  const std::string a = detection_curve_csv(cfg, sys, full, mc_opt);
  const std::string b = detection_curve_csv(cfg, sys, full, mc_opt);
  CHECK(a == b);
  const auto mc_rows = parse_csv(a);
  CHECK(mc_rows[0].size() == 8);
  CHECK(mc_rows[0][4] == "alpha_mc");
}

TEST_CASE("fig4 parameters put the total-error minimum at tau = 2") {
  SchemeConfig cfg = fig_cfg(Scheme::truncated);
  SystemParams sys;
  sys.phi = 0.1;
  const SweepSpec sweep = SweepSpec::parse("tau:0:4:801:linear");
  const auto rows = parse_csv(detection_curve_csv(cfg, sys, sweep, {}));
  double best_tau = -1.0, best_xi = 10.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double xi = std::stod(rows[i][3]);
    if (xi < best_xi) {
      best_xi = xi;
      best_tau = std::stod(rows[i][0]);
    }
  }
  CHECK(best_tau == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("ect sweep csv carries the infeasible flag") {
  SchemeConfig cfg = fig_cfg(Scheme::conventional);
  cfg.rate = 1.0;
  cfg.epsilon = 0.1;
  SystemParams sys;
  sys.phi = 0.1;
  const SweepSpec sweep = SweepSpec::parse("p_b_max_db:-10:20:4:linear");
  const auto rows = parse_csv(ect_sweep_csv(cfg, sys, sweep, {}));
  CHECK(rows[0] ==
        std::vector<std::string>{"x_db", "q_star", "r_star", "ect", "xi_bar", "bound", "feasible"});
  CHECK(rows.size() == 5);
  // Fixed rate 1 is undecodable at the small Q* forced by -10 dB.
  CHECK(rows[1][6] == "0");
  CHECK(rows[1][3] == "0");
  CHECK(rows[1][1] == "nan");
  // ... and feasible at 20 dB.
  CHECK(rows[4][6] == "1");
  CHECK(std::stod(rows[4][3]) > 0.0);

  CHECK_THROWS_AS(ect_sweep_csv(cfg, sys, SweepSpec::parse("tau:0:1:3:linear"), {}),
                  ConfigError);
}

TEST_CASE("verify report passes and is deterministic across thread counts") {
  const SchemeConfig cfg = fig_cfg(Scheme::truncated);
  SystemParams sys;
  sys.phi = 0.1;
  McConfig mc;
  mc.n_draws = 200000;
  mc.seed = 11;
  mc.threads = 1;
  const VerifyReport a = run_verify(cfg, sys, mc);
  CHECK(a.all_pass);
  CHECK(a.text.find("verify: PASS (5/5 checks") != std::string::npos);
  mc.threads = 8;
  const VerifyReport b = run_verify(cfg, sys, mc);
  CHECK(a.text == b.text);

  McConfig other = mc;
  other.seed = 12;
  const VerifyReport c = run_verify(cfg, sys, other);
  CHECK(c.text != a.text);  // the seed is really used
  CHECK(c.all_pass);
}

TEST_CASE("figure presets emit the documented headers") {
  FigureOptions opt;
  const auto f3 = parse_csv(figure_csv("fig3", opt));
  CHECK(f3[0][0] == "tau");
  CHECK(f3.size() == 802);
  const auto f4 = parse_csv(figure_csv("fig4", opt));
  CHECK(f4.size() == 802);
  CHECK_THROWS_AS(figure_csv("fig9", opt), ConfigError);

  // The conventional curve's minimum total error is 1 - ln 2 at tau = 2.
  double best_tau = -1.0, best_xi = 10.0;
  for (std::size_t i = 1; i < f3.size(); ++i) {
    const double xi = std::stod(f3[i][3]);
    if (xi < best_xi) {
      best_xi = xi;
      best_tau = std::stod(f3[i][0]);
    }
  }
  CHECK(best_tau == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(best_xi == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("figure csv is byte-stable") {
  FigureOptions opt;
  CHECK(figure_csv("fig3", opt) == figure_csv("fig3", opt));
}
