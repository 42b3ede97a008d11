#pragma once

#include <stdexcept>

#include "cipc/model.hpp"
#include "cipc/specfun.hpp"

namespace cipc {

struct BracketError : std::runtime_error {
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

struct EctResult {
  double q_star = 0.0;
  double r_used = 0.0;
  double r_star = 0.0;  // NaN unless the rate was optimized
  double ect = 0.0;
  double xi_bar_at_q_star = 0.0;
  double constraint_slack = 0.0;   // min{pi0,pi1} xi_bar - (min{pi0,pi1} - eps)
  double asymptotic_bound = 0.0;   // NaN for the truncated scheme
};

// Scale ratio phi(Q) = P_b^max lambda_ab lambda_bw / (Q lambda_aw);
// the conventional scheme's detection quantities depend on the power
// parameters only through it.
double phi_of_q(double q, const SchemeConfig& cfg, const SystemParams& sys);

// Expected minimum total error E[xi*(g_bw, Q)] over g_bw ~ Exp(lambda_bw).
// The conventional value is evaluated by quadrature of the integral form;
// the 3F3 closed form below is the cross-check.
double xi_bar_conventional(double q, const SchemeConfig& cfg, const SystemParams& sys,
                           const specfun::QuadratureSpec& spec = {1e-12, 1e-11, 4000});

// Closed form of the same expectation, via 3F3([1,1,1],[2,2,2];x), Ei and
// a harmonic-number series, x = 1/phi(Q).  Valid for x <= 25 (beyond that
// the cancellation between the exponentially growing pieces exhausts long
// double precision); throws std::domain_error outside the range.
double xi_bar_conventional_closed_form(double q, const SchemeConfig& cfg,
                                       const SystemParams& sys);

double xi_bar_truncated(double q, const SchemeConfig& cfg, const SystemParams& sys,
                        const specfun::QuadratureSpec& spec = {1e-12, 1e-11, 4000});

// Dispatches on cfg.scheme.
double xi_bar(double q, const SchemeConfig& cfg, const SystemParams& sys);

// Conventional scheme: the Q solving xi_bar(Q) = 1 - 2 epsilon, found by
// log-space bisection on the scale-invariant ratio phi(Q).
double solve_q_epsilon(const SchemeConfig& cfg, const SystemParams& sys);

// Effective covert throughput R (1 - delta) P_C at the given design point.
double ect(double q, double rate, const SchemeConfig& cfg, const SystemParams& sys);

EctResult optimize_conventional(const SchemeConfig& cfg, const SystemParams& sys,
                                bool optimize_rate);

EctResult optimize_truncated(const SchemeConfig& cfg, const SystemParams& sys,
                             bool optimize_rate);

EctResult optimize(const SchemeConfig& cfg, const SystemParams& sys,
                   bool optimize_rate);

// P_b^max -> inf limit of the conventional maximum ECT (uses cfg.rate).
// Returns exactly R when phi = 0.
double asymptotic_ect_bound(const SchemeConfig& cfg, const SystemParams& sys);

}  // namespace cipc
