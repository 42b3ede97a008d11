#include "cipc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cipc/specfun.hpp"

namespace cipc {

namespace {

void check_argument(double value) {
  if (std::abs(value) < 1e-300) {
    throw std::domain_error("detection: Ei argument magnitude below 1e-300");
  }
}

// e^a (Ei(-k1) - Ei(-k2)) for k1, k2 >= a > 0, formed from the scaled
// e^x E1(x) so that large a never overflows.
double scaled_ei_diff(double a, double k1, double k2) {
  check_argument(a);
  check_argument(k1);
  check_argument(k2);
  const double t1 = std::exp(a - k1) * specfun::e1_scaled(k1);
  const double t2 = std::exp(a - k2) * specfun::e1_scaled(k2);
  return t2 - t1;
}

using specfun::log1p_over;

}  // namespace

DetectorContext make_detector_context(double g_bw, const SchemeConfig& cfg,
                                      const SystemParams& sys) {
  if (!(g_bw > 0.0)) throw std::domain_error("detector context: g_bw must be positive");
  return DetectorContext{g_bw, cfg.p_b_max * g_bw + sys.sigma2_w};
}

double false_alarm(double tau, const DetectorContext& ctx, const SchemeConfig& cfg,
                   const SystemParams& sys) {
  if (tau < sys.sigma2_w) return 1.0;
  if (tau <= ctx.nu) {
    // 1 - (tau - sigma_w^2)/(P_b^max g_bw), arranged so tau = nu gives 0.
    return std::clamp((ctx.nu - tau) / (cfg.p_b_max * ctx.g_bw), 0.0, 1.0);
  }
  return 0.0;
}

double miss_detection_truncated(double tau, const DetectorContext& ctx,
                                const SchemeConfig& cfg, const SystemParams& sys) {
  if (tau < sys.sigma2_w) return 0.0;
  const double a = cfg.q / (cfg.p_a_max * sys.lambda_ab);
  const double denom = cfg.p_a_max * sys.lambda_aw * sys.lambda_ab;
  const double pref = cfg.q * sys.lambda_aw / (cfg.p_b_max * sys.lambda_ab * ctx.g_bw);
  const double k1 = ((tau - sys.sigma2_w) * sys.lambda_ab + cfg.q * sys.lambda_aw) / denom;
  if (tau <= ctx.nu) {
    const double lead = (tau - sys.sigma2_w) / (cfg.p_b_max * ctx.g_bw);
    return std::clamp(lead - pref * scaled_ei_diff(a, k1, a), 0.0, 1.0);
  }
  const double k2 = ((tau - ctx.nu) * sys.lambda_ab + cfg.q * sys.lambda_aw) / denom;
  return std::clamp(1.0 - pref * scaled_ei_diff(a, k1, k2), 0.0, 1.0);
}

double miss_detection_conventional(double tau, const DetectorContext& ctx,
                                   const SchemeConfig& cfg, const SystemParams& sys) {
  if (tau < sys.sigma2_w) return 0.0;
  const double w = cfg.q * sys.lambda_aw / sys.lambda_ab;
  if (tau <= ctx.nu) {
    const double x = tau - sys.sigma2_w;
    const double value = (x - w * std::log1p(x / w)) / (cfg.p_b_max * ctx.g_bw);
    return std::clamp(value, 0.0, 1.0);
  }
  const double value =
      1.0 - w / (cfg.p_b_max * ctx.g_bw) * std::log1p(cfg.p_b_max * ctx.g_bw / (tau + w - ctx.nu));
  return std::clamp(value, 0.0, 1.0);
}

double miss_detection(double tau, const DetectorContext& ctx, const SchemeConfig& cfg,
                      const SystemParams& sys) {
  return cfg.scheme == Scheme::truncated
             ? miss_detection_truncated(tau, ctx, cfg, sys)
             : miss_detection_conventional(tau, ctx, cfg, sys);
}

double total_error(double tau, const DetectorContext& ctx, const SchemeConfig& cfg,
                   const SystemParams& sys) {
  return false_alarm(tau, ctx, cfg, sys) + miss_detection(tau, ctx, cfg, sys);
}

double optimal_threshold(const DetectorContext& ctx) { return ctx.nu; }

double xi_star_complement(double g_bw, const SchemeConfig& cfg,
                          const SystemParams& sys) {
  if (!(g_bw > 0.0)) throw std::domain_error("xi_star: g_bw must be positive");
  if (cfg.scheme == Scheme::conventional) {
    const double r = cfg.p_b_max * sys.lambda_ab * g_bw / (cfg.q * sys.lambda_aw);
    return std::clamp(log1p_over(r), 0.0, 1.0);
  }
  const double a = cfg.q / (cfg.p_a_max * sys.lambda_ab);
  const double u = cfg.p_b_max * g_bw / (cfg.p_a_max * sys.lambda_aw);
  check_argument(a);
  if (u < 1e-4 * std::min(1.0, a)) {
    // Short expansion of (a/u) int_0^u e^{-s}/(a+s) ds for tiny u.
    const double c1 = (1.0 + 1.0 / a) / 2.0;
    const double c2 = (1.0 + 2.0 / a + 2.0 / (a * a)) / 6.0;
    const double c3 = (1.0 + 3.0 / a + 6.0 / (a * a) + 6.0 / (a * a * a)) / 24.0;
    return std::clamp(1.0 - u * (c1 - u * (c2 - u * c3)), 0.0, 1.0);
  }
  const double pref = cfg.q * sys.lambda_aw / (cfg.p_b_max * sys.lambda_ab * g_bw);
  return std::clamp(pref * scaled_ei_diff(a, a + u, a), 0.0, 1.0);
}

double xi_star(double g_bw, const SchemeConfig& cfg, const SystemParams& sys) {
  if (!(g_bw > 0.0)) throw std::domain_error("xi_star: g_bw must be positive");
  if (cfg.scheme == Scheme::conventional) {
    const double r = cfg.p_b_max * sys.lambda_ab * g_bw / (cfg.q * sys.lambda_aw);
    return std::clamp(1.0 - log1p_over(r), 0.0, 1.0);
  }
  const double a = cfg.q / (cfg.p_a_max * sys.lambda_ab);
  const double u = cfg.p_b_max * g_bw / (cfg.p_a_max * sys.lambda_aw);
  check_argument(a);
  if (u < 1e-4 * std::min(1.0, a)) {
    // Short expansion of 1 - (a/u) int_0^u e^{-s}/(a+s) ds for tiny u.
    const double c1 = (1.0 + 1.0 / a) / 2.0;
    const double c2 = (1.0 + 2.0 / a + 2.0 / (a * a)) / 6.0;
    const double c3 = (1.0 + 3.0 / a + 6.0 / (a * a) + 6.0 / (a * a * a)) / 24.0;
    return std::clamp(u * (c1 - u * (c2 - u * c3)), 0.0, 1.0);
  }
  const double pref = cfg.q * sys.lambda_aw / (cfg.p_b_max * sys.lambda_ab * g_bw);
  return std::clamp(1.0 - pref * scaled_ei_diff(a, a + u, a), 0.0, 1.0);
}

DetectionCurve detection_curve(const DetectorContext& ctx, const SchemeConfig& cfg,
                               const SystemParams& sys,
                               const std::vector<double>& taus) {
  DetectionCurve curve;
  curve.taus = taus;
  curve.alphas.reserve(taus.size());
  curve.betas.reserve(taus.size());
  curve.xis.reserve(taus.size());
  for (const double tau : taus) {
    const double a = false_alarm(tau, ctx, cfg, sys);
    const double b = miss_detection(tau, ctx, cfg, sys);
    curve.alphas.push_back(a);
    curve.betas.push_back(b);
    curve.xis.push_back(a + b);
  }
  curve.tau_star = optimal_threshold(ctx);
  curve.xi_star = cipc::xi_star(ctx.g_bw, cfg, sys);
  return curve;
}

}  // namespace cipc
