#pragma once

#include <string>
#include <vector>

#include "cipc/mc.hpp"
#include "cipc/model.hpp"

namespace cipc {

enum class SweepVariable { tau, q, p_b_max_db, p_a_max_db, epsilon };

struct SweepSpec {
  SweepVariable variable = SweepVariable::tau;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  enum class Spacing { linear, log } spacing = Spacing::linear;

  // Parses "VAR:START:STOP:POINTS:SPACING", e.g. "tau:0:4:801:linear".
  static SweepSpec parse(const std::string& text);
  void validate() const;  // throws ConfigError
  std::vector<double> grid() const;
};

// %.12g, C locale; the one formatter used for all CSV and report output.
std::string fmt12(double value);

struct DetectionCurveOptions {
  double g_bw = 1.0;
  bool with_mc = false;
  McConfig mc;
};

// CSV with header tau,alpha,beta,xi and, under --mc, the extra columns
// alpha_mc,beta_mc,xi_mc,mc_stderr.  One MC stream pair per row.
std::string detection_curve_csv(const SchemeConfig& cfg, const SystemParams& sys,
                                const SweepSpec& sweep,
                                const DetectionCurveOptions& opt);

struct EctSweepOptions {
  bool optimize_rate = false;
};

// CSV with header x_db,q_star,r_star,ect,xi_bar,bound,feasible.  Rows with
// an empty feasible set carry ect=0 and feasible=0.
std::string ect_sweep_csv(const SchemeConfig& cfg, const SystemParams& sys,
                          const SweepSpec& sweep, const EctSweepOptions& opt);

struct VerifyReport {
  std::string text;
  bool all_pass = false;
};

// Closed-form vs Monte Carlo checks (alpha, beta, xi*, delta, xi_bar) at
// the configured point; a check passes when |z| <= 4.
VerifyReport run_verify(const SchemeConfig& cfg, const SystemParams& sys,
                        const McConfig& mc);

struct FigureOptions {
  bool with_mc = false;  // only affects fig3/fig4
  McConfig mc;
};

// Figure-reproduction presets fig3, fig4, fig5, fig6, fig7 with the
// caption parameters built in.
std::string figure_csv(const std::string& name, const FigureOptions& opt);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cipc
