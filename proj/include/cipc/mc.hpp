#pragma once

#include <cstdint>

#include "cipc/model.hpp"

namespace cipc {

struct McConfig {
  std::uint64_t seed = 42;
  std::uint64_t n_draws = 1'000'000;
  std::uint64_t stream_id = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

enum class Hypothesis { h0, h1 };

// SplitMix64: counter-based 64-bit generator, so that stream derivation is
// a pure function of (seed, stream_id, chunk).  Deterministic everywhere;
// no std::random distributions are used.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  double next_unit();                  // uniform in [0, 1)
  double next_uniform(double hi);      // uniform in [0, hi)
  double next_exponential(double mean);

 private:
  std::uint64_t state_;
};

SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t stream_id,
                         std::uint64_t chunk);

// Estimates P[T > tau | hypothesis] for the radiometer statistic
//   T = p_b g_bw + sigma_w^2                      (H0)
//   T = Q g_aw/g_ab + p_b g_bw + sigma_w^2        (H1)
// with p_b ~ U[0, P_b^max], g_aw ~ Exp(lambda_aw), and g_ab ~ Exp(lambda_ab)
// conditioned on g_ab >= Q/P_a^max under the truncated scheme.
// alpha_hat is this probability under H0; beta_hat is one minus it under H1.
McEstimate simulate_detection(double tau, Hypothesis hyp, double g_bw,
                              const SchemeConfig& cfg, const SystemParams& sys,
                              const McConfig& mc);

// Estimates P[log2(1 + Q/(phi p_b g_bb + sigma_b^2)) <= R].
McEstimate simulate_outage(const SchemeConfig& cfg, const SystemParams& sys,
                           const McConfig& mc);

// Hybrid oracle for the expected minimum total error: draws g_bw ~
// Exp(lambda_bw) and averages the analytic xi*(g_bw, q).
McEstimate simulate_xi_bar(double q, const SchemeConfig& cfg,
                           const SystemParams& sys, const McConfig& mc);

// Analytics-free variant: per outer g_bw draw, estimates xi(nu) =
// alpha(nu) + beta(nu) empirically from inner_draws samples of T.
McEstimate simulate_xi_bar_nested(double q, const SchemeConfig& cfg,
                                  const SystemParams& sys, const McConfig& mc,
                                  std::uint64_t inner_draws);

}  // namespace cipc
