#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cipc/outage.hpp"
#include "cipc/specfun.hpp"
#include "oracles.hpp"

using namespace cipc;

namespace {

// eta = 1 with R = 1: thr = 1, q - sigma2_b = lambda_bb phi p_b_max.
SchemeConfig eta_one_cfg() {
  SchemeConfig cfg;
  cfg.q = 1.5;
  cfg.rate = 1.0;
  cfg.p_b_max = 1.0;
  return cfg;
}

SystemParams eta_one_sys() {
  SystemParams sys;
  sys.sigma2_b = 0.5;
  sys.phi = 1.0;
  return sys;
}

}  // namespace

TEST_CASE("eta and the outage probability at eta = 1") {
  const SchemeConfig cfg = eta_one_cfg();
  const SystemParams sys = eta_one_sys();
  CHECK(outage_eta(cfg, sys) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(outage_probability(cfg, sys) ==
        doctest::Approx(oracle::frozen::delta_eta1).epsilon(1e-12));
}

TEST_CASE("phi = 0 gives zero outage exactly") {
  SchemeConfig cfg = eta_one_cfg();
  SystemParams sys = eta_one_sys();
  sys.phi = 0.0;
  CHECK(outage_probability(cfg, sys) == 0.0);
  CHECK_THROWS_AS(outage_eta(cfg, sys), std::domain_error);
}

TEST_CASE("outage vanishes for large eta") {
  SchemeConfig cfg = eta_one_cfg();
  cfg.q = 1e8;
  CHECK(outage_probability(cfg, eta_one_sys()) < 1e-12);
}

TEST_CASE("decodability guard") {
  SchemeConfig cfg = eta_one_cfg();
  cfg.rate = 2.0;  // log2(1 + 1.5/0.5) = 2, not strictly below
  CHECK_THROWS_AS(outage_probability(cfg, eta_one_sys()), std::domain_error);
}

TEST_CASE("sinr at Bob") {
  SchemeConfig cfg;
  cfg.q = 1.0;
  SystemParams sys;
  sys.sigma2_b = 1.0;
  sys.phi = 1.0;
  ChannelDraw draw;
  draw.p_b = 1.0;
  draw.g_bb = 1.0;
  CHECK(sinr_at_bob(draw, cfg, sys) == doctest::Approx(0.5).epsilon(1e-14));

  sys.phi = 0.0;
  draw.p_b = 123.0;
  draw.g_bb = 9.0;
  CHECK(sinr_at_bob(draw, cfg, sys) == doctest::Approx(1.0).epsilon(1e-14));

  // gamma_b can never exceed Q/sigma_b^2.
  oracle::Rng rng(3);
  sys.phi = 0.3;
  for (int i = 0; i < 100; ++i) {
    draw.p_b = rng.uniform(0.0, 10.0);
    draw.g_bb = rng.log_uniform(1e-3, 10.0);
    CHECK(sinr_at_bob(draw, cfg, sys) <= cfg.q / sys.sigma2_b + 1e-15);
  }
}

TEST_CASE("delta lies in [0,1) and is monotone in q and p_b_max") {
  SystemParams sys = eta_one_sys();
  sys.phi = 0.4;
  SchemeConfig cfg = eta_one_cfg();
  double prev = 1.0;
  for (int i = 0; i < 12; ++i) {
    cfg.q = 0.8 + 0.35 * i;
    const double d = outage_probability(cfg, sys);
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    CHECK(d < prev);  // strictly decreasing in Q (Corollary-1 behaviour)
    prev = d;
  }
  cfg = eta_one_cfg();
  prev = 0.0;
  for (int i = 0; i < 12; ++i) {
    cfg.p_b_max = 0.3 * (i + 1);
    const double d = outage_probability(cfg, sys);
    CHECK(d > prev);  // strictly increasing in P_b^max
    prev = d;
  }
}

TEST_CASE("d delta / d eta equals Ei(-eta) and is negative") {
  // The direct derivative of e^-eta + eta Ei(-eta) is Ei(-eta); checked by
  // central differences over a log-spaced grid of eta.
  auto delta_of_eta = [](double eta) {
    return std::exp(-eta) + eta * cipc::specfun::ei(-eta);
  };
  for (int i = 0; i < 20; ++i) {
    const double eta = 0.05 * std::pow(20.0 / 0.05, i / 19.0);
    const double h = eta * 1e-6;
    const double fd = (delta_of_eta(eta + h) - delta_of_eta(eta - h)) / (2.0 * h);
    CHECK(fd < 0.0);
    CHECK(fd == doctest::Approx(cipc::specfun::ei(-eta)).epsilon(1e-6));
  }
}
