#include "cipc/outage.hpp"

#include <cmath>
#include <stdexcept>

#include "cipc/specfun.hpp"

namespace cipc {

namespace {

double rate_threshold(double rate) { return std::exp2(rate) - 1.0; }

void check_guard(const SchemeConfig& cfg, const SystemParams& sys) {
  if (!(cfg.rate < std::log2(1.0 + cfg.q / sys.sigma2_b))) {
    throw std::domain_error("outage: rate >= log2(1 + q/sigma2_b)");
  }
}

}  // namespace

double outage_eta(const SchemeConfig& cfg, const SystemParams& sys) {
  check_guard(cfg, sys);
  if (!(sys.phi > 0.0)) throw std::domain_error("outage_eta: undefined for phi = 0");
  const double thr = rate_threshold(cfg.rate);
  return (cfg.q - thr * sys.sigma2_b) / (thr * sys.lambda_bb * sys.phi * cfg.p_b_max);
}

double sinr_at_bob(const ChannelDraw& draw, const SchemeConfig& cfg,
                   const SystemParams& sys) {
  return cfg.q / (sys.phi * draw.p_b * draw.g_bb + sys.sigma2_b);
}

double outage_probability(const SchemeConfig& cfg, const SystemParams& sys) {
  check_guard(cfg, sys);
  if (sys.phi == 0.0) return 0.0;  // SINR is deterministic above the threshold
  const double eta = outage_eta(cfg, sys);
  return std::exp(-eta) + eta * specfun::ei(-eta);
}

}  // namespace cipc
