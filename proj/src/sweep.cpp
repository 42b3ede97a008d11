#include "cipc/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cipc/covert_opt.hpp"
#include "cipc/detection.hpp"
#include "cipc/outage.hpp"

namespace cipc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SweepVariable parse_variable(const std::string& name) {
  if (name == "tau") return SweepVariable::tau;
  if (name == "q") return SweepVariable::q;
  if (name == "p_b_max_db") return SweepVariable::p_b_max_db;
  if (name == "p_a_max_db") return SweepVariable::p_a_max_db;
  if (name == "epsilon") return SweepVariable::epsilon;
  throw ConfigError("sweep: unknown variable '" + name + "'");
}

double parse_double(const std::string& field, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("sweep: bad " + what + " '" + field + "'");
  }
}

}  // namespace

SweepSpec SweepSpec::parse(const std::string& text) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ':')) fields.push_back(cur);
  if (fields.size() != 5) {
    throw ConfigError("sweep: expected VAR:START:STOP:POINTS:SPACING, got '" + text + "'");
  }
  SweepSpec spec;
  spec.variable = parse_variable(fields[0]);
  spec.start = parse_double(fields[1], "start");
  spec.stop = parse_double(fields[2], "stop");
  spec.points = static_cast<int>(parse_double(fields[3], "points"));
  if (fields[4] == "linear") {
    spec.spacing = Spacing::linear;
  } else if (fields[4] == "log") {
    spec.spacing = Spacing::log;
  } else {
    throw ConfigError("sweep: spacing must be 'linear' or 'log'");
  }
  spec.validate();
  return spec;
}

void SweepSpec::validate() const {
  if (points < 2) throw ConfigError("sweep: points must be >= 2");
  if (!(start < stop)) throw ConfigError("sweep: start must be below stop");
  if (spacing == Spacing::log && !(start > 0.0)) {
    throw ConfigError("sweep: log spacing requires start > 0");
  }
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> out(points);
  if (spacing == Spacing::linear) {
    const double step = (stop - start) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = start + step * i;
  } else {
    const double step = std::log(stop / start) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = start * std::exp(step * i);
  }
  out.back() = stop;
  return out;
}

std::string fmt12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string detection_curve_csv(const SchemeConfig& cfg, const SystemParams& sys,
                                const SweepSpec& sweep,
                                const DetectionCurveOptions& opt) {
  validate(cfg, sys);
  if (sweep.variable != SweepVariable::tau) {
    throw ConfigError("detection-curve: sweep variable must be tau");
  }
  const DetectorContext ctx = make_detector_context(opt.g_bw, cfg, sys);
  const std::vector<double> taus = sweep.grid();

  std::string out = "tau,alpha,beta,xi";
  if (opt.with_mc) out += ",alpha_mc,beta_mc,xi_mc,mc_stderr";
  out += "\n";
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double tau = taus[i];
    const double a = false_alarm(tau, ctx, cfg, sys);
    const double b = miss_detection(tau, ctx, cfg, sys);
    out += fmt12(tau) + "," + fmt12(a) + "," + fmt12(b) + "," + fmt12(a + b);
    if (opt.with_mc) {
      McConfig mc0 = opt.mc;
      mc0.stream_id = 2 * i;
      McConfig mc1 = opt.mc;
      mc1.stream_id = 2 * i + 1;
      const McEstimate e0 = simulate_detection(tau, Hypothesis::h0, opt.g_bw, cfg, sys, mc0);
      const McEstimate e1 = simulate_detection(tau, Hypothesis::h1, opt.g_bw, cfg, sys, mc1);
      const double alpha_mc = e0.mean;
      const double beta_mc = 1.0 - e1.mean;
      const double se = std::sqrt(e0.std_error * e0.std_error + e1.std_error * e1.std_error);
      out += "," + fmt12(alpha_mc) + "," + fmt12(beta_mc) + "," +
             fmt12(alpha_mc + beta_mc) + "," + fmt12(se);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::string ect_row(double x, const SchemeConfig& cfg, const SystemParams& sys,
                    bool optimize_rate) {
  try {
    const EctResult r = optimize(cfg, sys, optimize_rate);
    return fmt12(x) + "," + fmt12(r.q_star) + "," + fmt12(r.r_star) + "," +
           fmt12(r.ect) + "," + fmt12(r.xi_bar_at_q_star) + "," +
           fmt12(r.asymptotic_bound) + ",1\n";
  } catch (const InfeasibleError&) {
    return fmt12(x) + ",nan,nan,0,nan,nan,0\n";
  }
}

}  // namespace

std::string ect_sweep_csv(const SchemeConfig& cfg, const SystemParams& sys,
                          const SweepSpec& sweep, const EctSweepOptions& opt) {
  sys.validate();
  if (sweep.variable == SweepVariable::tau || sweep.variable == SweepVariable::q) {
    throw ConfigError("ect-sweep: sweep variable must be p_b_max_db, p_a_max_db or epsilon");
  }
  std::string out = "x_db,q_star,r_star,ect,xi_bar,bound,feasible\n";
  for (const double x : sweep.grid()) {
    SchemeConfig c = cfg;
    switch (sweep.variable) {
      case SweepVariable::p_b_max_db: c.p_b_max = db_to_linear(x); break;
      case SweepVariable::p_a_max_db: c.p_a_max = db_to_linear(x); break;
      case SweepVariable::epsilon: c.epsilon = x; break;
      default: break;
    }
    out += ect_row(x, c, sys, opt.optimize_rate);
  }
  return out;
}

namespace {

struct Check {
  std::string name;
  double analytic;
  double mc_mean;
  double std_error;
};

std::string pad(const std::string& s, std::size_t width) {
  std::string out = s;
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

}  // namespace

VerifyReport run_verify(const SchemeConfig& cfg, const SystemParams& sys,
                        const McConfig& mc) {
  validate(cfg, sys);
  const double g_bw = sys.lambda_bw;
  const DetectorContext ctx = make_detector_context(g_bw, cfg, sys);
  const double tau_mid = sys.sigma2_w + 0.5 * (ctx.nu - sys.sigma2_w);

  std::vector<Check> checks;
  auto with_stream = [&mc](std::uint64_t id) {
    McConfig m = mc;
    m.stream_id = id;
    return m;
  };
  {
    const McEstimate e = simulate_detection(tau_mid, Hypothesis::h0, g_bw, cfg, sys, with_stream(0));
    checks.push_back({"alpha(tau_mid)", false_alarm(tau_mid, ctx, cfg, sys), e.mean, e.std_error});
  }
  {
    const McEstimate e = simulate_detection(tau_mid, Hypothesis::h1, g_bw, cfg, sys, with_stream(1));
    checks.push_back({"beta(tau_mid)", miss_detection(tau_mid, ctx, cfg, sys), 1.0 - e.mean, e.std_error});
  }
  {
    const McEstimate e = simulate_detection(ctx.nu, Hypothesis::h1, g_bw, cfg, sys, with_stream(2));
    checks.push_back({"xi_star(g_bw)", xi_star(g_bw, cfg, sys), 1.0 - e.mean, e.std_error});
  }
  {
    const McEstimate e = simulate_outage(cfg, sys, with_stream(3));
    checks.push_back({"delta", outage_probability(cfg, sys), e.mean, e.std_error});
  }
  {
    const McEstimate e = simulate_xi_bar(cfg.q, cfg, sys, with_stream(4));
    checks.push_back({"xi_bar(q)", xi_bar(cfg.q, cfg, sys), e.mean, e.std_error});
  }

  VerifyReport report;
  report.all_pass = true;
  std::string text;
  text += "point: scheme=";
  text += cfg.scheme == Scheme::truncated ? "truncated" : "conventional";
  text += " q=" + fmt12(cfg.q) + " g_bw=" + fmt12(g_bw) + " nu=" + fmt12(ctx.nu) +
          " tau_mid=" + fmt12(tau_mid) + "\n";
  text += pad("check", 16) + pad("analytic", 20) + pad("mc", 20) +
          pad("std_err", 20) + pad("z", 10) + "result\n";
  double max_abs_z = 0.0;
  int passed = 0;
  for (const Check& c : checks) {
    const double diff = c.mc_mean - c.analytic;
    // All checked quantities lie in [0,1]; the binomial standard error at
    // the analytic value bounds the sampling noise even when the empirical
    // estimate saw zero events.
    const double p = std::clamp(c.analytic, 0.0, 1.0);
    const double se_analytic = std::sqrt(p * (1.0 - p) / static_cast<double>(mc.n_draws));
    const double se = std::max(c.std_error, se_analytic);
    double z;
    if (se > 0.0) {
      z = diff / se;
    } else {
      z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const bool ok = std::abs(z) <= 4.0;
    if (ok) ++passed;
    report.all_pass = report.all_pass && ok;
    max_abs_z = std::max(max_abs_z, std::abs(z));
    char zbuf[24];
    std::snprintf(zbuf, sizeof zbuf, "%.3f", z);
    text += pad(c.name, 16) + pad(fmt12(c.analytic), 20) + pad(fmt12(c.mc_mean), 20) +
            pad(fmt12(c.std_error), 20) + pad(zbuf, 10) + (ok ? "PASS" : "FAIL") + "\n";
  }
  char tail[160];
  std::snprintf(tail, sizeof tail, "verify: %s (%d/%d checks, max |z| = %.3f, draws=%llu, seed=%llu)\n",
                report.all_pass ? "PASS" : "FAIL", passed, static_cast<int>(checks.size()),
                max_abs_z, static_cast<unsigned long long>(mc.n_draws),
                static_cast<unsigned long long>(mc.seed));
  text += tail;
  report.text = text;
  return report;
}

namespace {

SystemParams unit_system() {
  SystemParams sys;
  sys.sigma2_b = 1.0;
  sys.sigma2_w = 1.0;
  sys.phi = 0.1;
  return sys;
}

std::string figure_curve(Scheme scheme, const FigureOptions& opt) {
  // Figs. 3 and 4: Q = 1, P_b^max = 0 dB, (P_a^max = 0 dB), |h_bw|^2 = 1,
  // sigma_w^2 = 0 dB; threshold swept linearly across [0, 2 nu].
  SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.q = 1.0;
  cfg.p_a_max = 1.0;
  cfg.p_b_max = 1.0;
  cfg.rate = 0.5;
  cfg.epsilon = 0.1;
  SystemParams sys = unit_system();
  SweepSpec sweep;
  sweep.variable = SweepVariable::tau;
  sweep.start = 0.0;
  sweep.stop = 4.0;
  sweep.points = 801;
  sweep.spacing = SweepSpec::Spacing::linear;
  DetectionCurveOptions copt;
  copt.g_bw = 1.0;
  copt.with_mc = opt.with_mc;
  copt.mc = opt.mc;
  return detection_curve_csv(cfg, sys, sweep, copt);
}

std::string figure5() {
  // Conventional ECT vs P_b^max for phi in {0.1, 0.5, 1.0}; eps = 0.10,
  // sigma_b^2 = 0 dB.  R = 1 (not stated in the caption; preset choice).
  std::string out = "phi,x_db,q_star,r_star,ect,xi_bar,bound,feasible\n";
  for (const double phi : {0.1, 0.5, 1.0}) {
    SchemeConfig cfg;
    cfg.scheme = Scheme::conventional;
    cfg.q = 1.0;
    cfg.p_b_max = 1.0;
    cfg.rate = 1.0;
    cfg.epsilon = 0.10;
    SystemParams sys = unit_system();
    sys.phi = phi;
    SweepSpec sweep;
    sweep.variable = SweepVariable::p_b_max_db;
    sweep.start = -10.0;
    sweep.stop = 60.0;
    sweep.points = 29;
    sweep.spacing = SweepSpec::Spacing::linear;
    const std::string body = ect_sweep_csv(cfg, sys, sweep, EctSweepOptions{false});
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);  // drop inner header
    while (std::getline(lines, line)) out += fmt12(phi) + "," + line + "\n";
  }
  return out;
}

std::string figure6() {
  // Truncated vs conventional ECT over P_b^max, optimized over Q and R;
  // phi = 0.1, eps = 0.01, P_a^max = 10 dB, sigma_b^2 = 0 dB.
  std::string out = "scheme,x_db,q_star,r_star,ect,xi_bar,bound,feasible\n";
  for (const Scheme scheme : {Scheme::truncated, Scheme::conventional}) {
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.q = 1.0;
    cfg.p_a_max = 10.0;
    cfg.p_b_max = 1.0;
    cfg.rate = 1.0;
    cfg.epsilon = 0.01;
    SystemParams sys = unit_system();
    sys.phi = 0.1;
    SweepSpec sweep;
    sweep.variable = SweepVariable::p_b_max_db;
    sweep.start = -10.0;
    sweep.stop = 40.0;
    sweep.points = 21;
    sweep.spacing = SweepSpec::Spacing::linear;
    const std::string body = ect_sweep_csv(cfg, sys, sweep, EctSweepOptions{true});
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);
    const char* tag = scheme == Scheme::truncated ? "truncated" : "conventional";
    while (std::getline(lines, line)) out += std::string(tag) + "," + line + "\n";
  }
  return out;
}

std::string figure7() {
  // ECT vs P_a^max under eps in {0.01, 0.05, 0.10}; P_b^max = 20 dB,
  // sigma_b^2 = -10 dB, phi = 0.1, optimized over Q and R.
  std::string out = "scheme,epsilon,x_db,q_star,r_star,ect,xi_bar,bound,feasible\n";
  for (const double eps : {0.01, 0.05, 0.10}) {
    for (const Scheme scheme : {Scheme::truncated, Scheme::conventional}) {
      SchemeConfig cfg;
      cfg.scheme = scheme;
      cfg.q = 1.0;
      cfg.p_a_max = 1.0;
      cfg.p_b_max = db_to_linear(20.0);
      cfg.rate = 1.0;
      cfg.epsilon = eps;
      SystemParams sys = unit_system();
      sys.sigma2_b = db_to_linear(-10.0);
      sys.phi = 0.1;
      SweepSpec sweep;
      sweep.variable = SweepVariable::p_a_max_db;
      sweep.start = 0.0;
      sweep.stop = 40.0;
      sweep.points = 11;
      sweep.spacing = SweepSpec::Spacing::linear;
      const std::string body = ect_sweep_csv(cfg, sys, sweep, EctSweepOptions{true});
      std::istringstream lines(body);
      std::string line;
      std::getline(lines, line);
      const char* tag = scheme == Scheme::truncated ? "truncated" : "conventional";
      while (std::getline(lines, line)) {
        out += std::string(tag) + "," + fmt12(eps) + "," + line + "\n";
      }
    }
  }
  return out;
}

}  // namespace

std::string figure_csv(const std::string& name, const FigureOptions& opt) {
  if (name == "fig3") return figure_curve(Scheme::conventional, opt);
  if (name == "fig4") return figure_curve(Scheme::truncated, opt);
  if (name == "fig5") return figure5();
  if (name == "fig6") return figure6();
  if (name == "fig7") return figure7();
  throw ConfigError("figure: unknown preset '" + name + "' (fig3|fig4|fig5|fig6|fig7)");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace cipc
