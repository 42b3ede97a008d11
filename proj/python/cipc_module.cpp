#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cipc/covert_opt.hpp"
#include "cipc/detection.hpp"
#include "cipc/mc.hpp"
#include "cipc/model.hpp"
#include "cipc/outage.hpp"
#include "cipc/specfun.hpp"
#include "cipc/sweep.hpp"

namespace py = pybind11;
using namespace cipc;

PYBIND11_MODULE(_cipc, m) {
  m.doc() = "Channel-inversion power control covert communication analytics";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<InfeasibleError>(m, "InfeasibleError");
  py::register_exception<BracketError>(m, "BracketError");

  py::enum_<Scheme>(m, "Scheme")
      .value("truncated", Scheme::truncated)
      .value("conventional", Scheme::conventional);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("lambda_ab", &SystemParams::lambda_ab)
      .def_readwrite("lambda_aw", &SystemParams::lambda_aw)
      .def_readwrite("lambda_bw", &SystemParams::lambda_bw)
      .def_readwrite("lambda_bb", &SystemParams::lambda_bb)
      .def_readwrite("sigma2_b", &SystemParams::sigma2_b)
      .def_readwrite("sigma2_w", &SystemParams::sigma2_w)
      .def_readwrite("phi", &SystemParams::phi);

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init<>())
      .def_readwrite("scheme", &SchemeConfig::scheme)
      .def_readwrite("q", &SchemeConfig::q)
      .def_readwrite("p_a_max", &SchemeConfig::p_a_max)
      .def_readwrite("p_b_max", &SchemeConfig::p_b_max)
      .def_readwrite("rate", &SchemeConfig::rate)
      .def_readwrite("epsilon", &SchemeConfig::epsilon);

  py::class_<Priors>(m, "Priors")
      .def_readonly("pi0", &Priors::pi0)
      .def_readonly("pi1", &Priors::pi1);

  py::class_<McConfig>(m, "McConfig")
      .def(py::init<>())
      .def_readwrite("seed", &McConfig::seed)
      .def_readwrite("n_draws", &McConfig::n_draws)
      .def_readwrite("stream_id", &McConfig::stream_id)
      .def_readwrite("threads", &McConfig::threads);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("mean", &McEstimate::mean)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("n", &McEstimate::n);

  py::class_<EctResult>(m, "EctResult")
      .def_readonly("q_star", &EctResult::q_star)
      .def_readonly("r_used", &EctResult::r_used)
      .def_readonly("r_star", &EctResult::r_star)
      .def_readonly("ect", &EctResult::ect)
      .def_readonly("xi_bar_at_q_star", &EctResult::xi_bar_at_q_star)
      .def_readonly("constraint_slack", &EctResult::constraint_slack)
      .def_readonly("asymptotic_bound", &EctResult::asymptotic_bound);

  py::enum_<Hypothesis>(m, "Hypothesis")
      .value("h0", Hypothesis::h0)
      .value("h1", Hypothesis::h1);

  m.def("ei", &specfun::ei, py::arg("x"));
  m.def("hyper3f3_unit_params", &specfun::hyper3f3_unit_params, py::arg("z"),
        py::arg("max_terms") = 10000);
  m.def("db_to_linear", &db_to_linear);
  m.def("linear_to_db", &linear_to_db);
  m.def("condition_c_probability", &condition_c_probability);
  m.def("priors", &priors);
  m.def("optimal_threshold",
        [](double g_bw, const SchemeConfig& cfg, const SystemParams& sys) {
          return optimal_threshold(make_detector_context(g_bw, cfg, sys));
        },
        py::arg("g_bw"), py::arg("cfg"), py::arg("sys"));
  m.def("false_alarm",
        [](double tau, double g_bw, const SchemeConfig& cfg, const SystemParams& sys) {
          return false_alarm(tau, make_detector_context(g_bw, cfg, sys), cfg, sys);
        },
        py::arg("tau"), py::arg("g_bw"), py::arg("cfg"), py::arg("sys"));
  m.def("miss_detection",
        [](double tau, double g_bw, const SchemeConfig& cfg, const SystemParams& sys) {
          return miss_detection(tau, make_detector_context(g_bw, cfg, sys), cfg, sys);
        },
        py::arg("tau"), py::arg("g_bw"), py::arg("cfg"), py::arg("sys"));
  m.def("xi_star", &xi_star, py::arg("g_bw"), py::arg("cfg"), py::arg("sys"));
  m.def("outage_probability", &outage_probability);
  m.def("xi_bar", &xi_bar, py::arg("q"), py::arg("cfg"), py::arg("sys"));
  m.def("xi_bar_closed_form", &xi_bar_conventional_closed_form, py::arg("q"),
        py::arg("cfg"), py::arg("sys"));
  m.def("solve_q_epsilon", &solve_q_epsilon);
  m.def("ect", &ect, py::arg("q"), py::arg("rate"), py::arg("cfg"), py::arg("sys"));
  m.def("optimize", &optimize, py::arg("cfg"), py::arg("sys"),
        py::arg("optimize_rate") = false);
  m.def("asymptotic_ect_bound", &asymptotic_ect_bound);
  m.def("simulate_detection", &simulate_detection, py::arg("tau"), py::arg("hypothesis"),
        py::arg("g_bw"), py::arg("cfg"), py::arg("sys"), py::arg("mc"));
  m.def("simulate_outage", &simulate_outage);
  m.def("simulate_xi_bar", &simulate_xi_bar);
  m.def("run_verify", [](const SchemeConfig& cfg, const SystemParams& sys, const McConfig& mc) {
    const VerifyReport r = run_verify(cfg, sys, mc);
    return py::make_tuple(r.all_pass, r.text);
  });
  m.def("figure_csv", [](const std::string& name) { return figure_csv(name, {}); });
  m.def("parse_config_text", [](const std::string& text) {
    const ParsedConfig p = parse_config_text(text);
    return py::make_tuple(p.cfg, p.sys);
  });
}
