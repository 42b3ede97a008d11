#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cipc {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Scheme { truncated, conventional };

// Static environment: mean channel power gains, noise powers and the
// self-interference cancellation coefficient.  All linear units.
struct SystemParams {
  double lambda_ab = 1.0;
  double lambda_aw = 1.0;
  double lambda_bw = 1.0;
  double lambda_bb = 1.0;
  double sigma2_b = 1.0;
  double sigma2_w = 1.0;
  double phi = 0.0;

  // Channel reciprocity: the Bob->Alice gain shares the Alice->Bob mean.
  double lambda_ba() const { return lambda_ab; }

  void validate() const;  // throws ConfigError
};

// One design point of a CIPC scheme.  Powers are linear watts; `p_a_max`
// is only meaningful for the truncated scheme.
struct SchemeConfig {
  Scheme scheme = Scheme::conventional;
  double q = 1.0;
  double p_a_max = 0.0;
  double p_b_max = 1.0;
  double rate = 1.0;
  double epsilon = 0.1;
};

// Instantaneous channel power gains plus Bob's AN power for one slot.
struct ChannelDraw {
  double g_ab = 0.0;
  double g_aw = 0.0;
  double g_bw = 0.0;
  double g_bb = 0.0;
  double p_b = 0.0;
};

struct Priors {
  double pi0 = 0.5;
  double pi1 = 0.5;
  double min_prior() const { return pi0 < pi1 ? pi0 : pi1; }
};

double db_to_linear(double x_db);
double linear_to_db(double x);

// Validates the pair, including the decodability guard
// rate < log2(1 + q/sigma2_b).  Throws ConfigError with a description.
void validate(const SchemeConfig& cfg, const SystemParams& sys);

// P[C] = exp(-Q/(lambda_ab P_a^max)) for the truncated scheme; exactly 1
// for the conventional scheme.
double condition_c_probability(const SchemeConfig& cfg, const SystemParams& sys);

// Conventional: (1/2, 1/2).  Truncated: pi1 = P[C]/2, pi0 = 1 - pi1.
Priors priors(const SchemeConfig& cfg, const SystemParams& sys);

struct ParsedConfig {
  SchemeConfig cfg;
  SystemParams sys;
};

// Line-oriented `key = value` config text; '#' starts a comment.
// Powers are given in dB (suffix _db keys); q and the lambdas are linear.
ParsedConfig parse_config_text(std::string_view text);
ParsedConfig load_config(const std::string& path);

}  // namespace cipc
