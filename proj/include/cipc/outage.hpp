#pragma once

#include "cipc/model.hpp"

namespace cipc {

// Dimensionless outage argument eta = (Q - (2^R-1) sigma_b^2) /
// ((2^R-1) lambda_bb phi P_b^max).  Requires phi > 0 and the decodability
// guard; throws std::domain_error otherwise.
double outage_eta(const SchemeConfig& cfg, const SystemParams& sys);

// Instantaneous SINR at Bob, Q/(phi p_b g_bb + sigma_b^2).  Under CIPC the
// received signal power is pinned to Q, so g_ab drops out.
double sinr_at_bob(const ChannelDraw& draw, const SchemeConfig& cfg,
                   const SystemParams& sys);

// Transmission outage probability delta = e^{-eta} + eta Ei(-eta);
// exactly 0 for phi = 0.
double outage_probability(const SchemeConfig& cfg, const SystemParams& sys);

}  // namespace cipc
