#pragma once

#include <vector>

#include "cipc/model.hpp"

namespace cipc {

// Willie's side of the problem for one channel realization: his known
// instantaneous gain |h_bw|^2 and the threshold knee
// nu = P_b^max |h_bw|^2 + sigma_w^2.
struct DetectorContext {
  double g_bw = 1.0;
  double nu = 0.0;
};

DetectorContext make_detector_context(double g_bw, const SchemeConfig& cfg,
                                      const SystemParams& sys);

// False alarm rate alpha(tau).  Identical for both schemes.
double false_alarm(double tau, const DetectorContext& ctx,
                   const SchemeConfig& cfg, const SystemParams& sys);

double miss_detection_truncated(double tau, const DetectorContext& ctx,
                                const SchemeConfig& cfg, const SystemParams& sys);

double miss_detection_conventional(double tau, const DetectorContext& ctx,
                                   const SchemeConfig& cfg, const SystemParams& sys);

// Dispatches on cfg.scheme.
double miss_detection(double tau, const DetectorContext& ctx,
                      const SchemeConfig& cfg, const SystemParams& sys);

// Total error xi(tau) = alpha(tau) + beta(tau).
double total_error(double tau, const DetectorContext& ctx,
                   const SchemeConfig& cfg, const SystemParams& sys);

// Willie's optimal threshold; equals nu for both schemes.
double optimal_threshold(const DetectorContext& ctx);

// Minimum total error xi*(|h_bw|^2, Q) at the optimal threshold.
double xi_star(double g_bw, const SchemeConfig& cfg, const SystemParams& sys);

// 1 - xi*(|h_bw|^2, Q), computed directly so the value keeps relative
// accuracy when xi* is close to one (large g_bw).
double xi_star_complement(double g_bw, const SchemeConfig& cfg,
                          const SystemParams& sys);

struct DetectionCurve {
  std::vector<double> taus;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> xis;
  double tau_star = 0.0;
  double xi_star = 0.0;
};

DetectionCurve detection_curve(const DetectorContext& ctx, const SchemeConfig& cfg,
                               const SystemParams& sys,
                               const std::vector<double>& taus);

}  // namespace cipc
