#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cipc/covert_opt.hpp"
#include "cipc/model.hpp"
#include "cipc/specfun.hpp"
#include "cipc/sweep.hpp"

namespace {

// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 numeric error.
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct McFlags {
  std::uint64_t draws = 1'000'000;
  std::uint64_t seed = 42;
  int threads = 0;
};

void add_mc_flags(CLI::App* cmd, McFlags& flags) {
  cmd->add_option("--draws", flags.draws, "Monte Carlo draws per estimate");
  cmd->add_option("--seed", flags.seed, "Monte Carlo seed");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware)");
}

cipc::McConfig to_mc(const McFlags& flags) {
  cipc::McConfig mc;
  mc.n_draws = flags.draws;
  mc.seed = flags.seed;
  mc.threads = flags.threads;
  return mc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covert-communication CIPC analytics: detection curves, outage, "
               "covertness-constrained throughput and a Monte Carlo oracle"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string sweep_text;
  double g_bw = 1.0;
  bool with_mc = false;
  bool optimize_rate = false;
  McFlags mc_flags;
  std::string figure_name;

  auto* curve = app.add_subcommand("detection-curve",
                                   "alpha/beta/xi versus threshold as CSV");
  curve->add_option("--config", config_path, "config file")->required();
  curve->add_option("--out", out_path, "output CSV path")->required();
  curve->add_option("--sweep", sweep_text, "tau:START:STOP:POINTS:SPACING")->required();
  curve->add_option("--g-bw", g_bw, "Willie's instantaneous gain |h_bw|^2");
  curve->add_flag("--mc", with_mc, "append Monte Carlo columns");
  add_mc_flags(curve, mc_flags);

  auto* sweep_cmd = app.add_subcommand("ect-sweep",
                                       "optimized ECT versus a swept parameter as CSV");
  sweep_cmd->add_option("--config", config_path, "config file")->required();
  sweep_cmd->add_option("--out", out_path, "output CSV path")->required();
  sweep_cmd->add_option("--sweep", sweep_text,
                        "p_b_max_db|p_a_max_db|epsilon:START:STOP:POINTS:SPACING")
      ->required();
  sweep_cmd->add_flag("--optimize-rate", optimize_rate, "search the rate as well");

  auto* verify = app.add_subcommand("verify",
                                    "closed forms versus Monte Carlo at the configured point");
  verify->add_option("--config", config_path, "config file")->required();
  verify->add_option("--out", out_path, "also write the report to this path");
  add_mc_flags(verify, mc_flags);

  auto* figure = app.add_subcommand("figure", "figure-reproduction CSV presets");
  figure->add_option("name", figure_name, "fig3|fig4|fig5|fig6|fig7")->required();
  figure->add_option("--out", out_path, "output CSV path")->required();
  figure->add_flag("--mc", with_mc, "append Monte Carlo columns (fig3/fig4)");
  add_mc_flags(figure, mc_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (curve->parsed()) {
      const cipc::ParsedConfig parsed = cipc::load_config(config_path);
      const cipc::SweepSpec spec = cipc::SweepSpec::parse(sweep_text);
      cipc::DetectionCurveOptions opt;
      opt.g_bw = g_bw;
      opt.with_mc = with_mc;
      opt.mc = to_mc(mc_flags);
      cipc::write_text_file(out_path,
                            cipc::detection_curve_csv(parsed.cfg, parsed.sys, spec, opt));
    } else if (sweep_cmd->parsed()) {
      const cipc::ParsedConfig parsed = cipc::load_config(config_path);
      const cipc::SweepSpec spec = cipc::SweepSpec::parse(sweep_text);
      cipc::write_text_file(
          out_path, cipc::ect_sweep_csv(parsed.cfg, parsed.sys, spec,
                                        cipc::EctSweepOptions{optimize_rate}));
    } else if (verify->parsed()) {
      const cipc::ParsedConfig parsed = cipc::load_config(config_path);
      const cipc::VerifyReport report =
          cipc::run_verify(parsed.cfg, parsed.sys, to_mc(mc_flags));
      std::fputs(report.text.c_str(), stdout);
      if (!out_path.empty()) cipc::write_text_file(out_path, report.text);
      if (!report.all_pass) return kExitVerifyFail;
    } else if (figure->parsed()) {
      cipc::FigureOptions opt;
      opt.with_mc = with_mc;
      opt.mc = to_mc(mc_flags);
      cipc::write_text_file(out_path, cipc::figure_csv(figure_name, opt));
    }
  } catch (const cipc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  }
  return 0;
}
