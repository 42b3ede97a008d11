"""Smoke tests for the python bindings: a thin pass over each exposed area."""

import math
import sys

import _cipc as cipc


def check(ok, what):
    if not ok:
        print(f"FAIL: {what}")
        sys.exit(1)
    print(f"ok: {what}")


def main():
    check(abs(cipc.ei(-1.0) + 0.2193839343955203) < 1e-12, "ei(-1)")
    check(abs(cipc.hyper3f3_unit_params(1.0) - 1.1464990725286428) < 1e-12, "3F3(1)")
    check(cipc.db_to_linear(20.0) == 100.0, "db_to_linear")

    sys_params = cipc.SystemParams()
    sys_params.phi = 0.1
    cfg = cipc.SchemeConfig()
    cfg.scheme = cipc.Scheme.conventional
    cfg.q = 1.0
    cfg.p_b_max = 1.0
    cfg.rate = 0.5
    cfg.epsilon = 0.1

    check(abs(cipc.xi_star(1.0, cfg, sys_params) - (1.0 - math.log(2.0))) < 1e-12,
          "conventional xi*")
    check(cipc.optimal_threshold(1.0, cfg, sys_params) == 2.0, "tau* = nu")
    check(cipc.false_alarm(2.0, 1.0, cfg, sys_params) == 0.0, "alpha(nu) = 0")
    check(abs(cipc.xi_bar(1.0, cfg, sys_params) - 0.2548040436139033) < 1e-8, "xi_bar")
    check(abs(cipc.xi_bar_closed_form(1.0, cfg, sys_params) -
              cipc.xi_bar(1.0, cfg, sys_params)) < 1e-7, "closed form")

    q_eps = cipc.solve_q_epsilon(cfg, sys_params)
    check(abs(cipc.xi_bar(q_eps, cfg, sys_params) - 0.8) < 1e-7, "solve_q_epsilon")

    cfg.p_b_max = cipc.db_to_linear(30.0)
    cfg.rate = 1.0
    result = cipc.optimize(cfg, sys_params, False)
    check(result.constraint_slack >= -1e-9, "optimize feasibility")
    check(0.0 <= result.ect <= result.r_used, "ect range")
    check(result.asymptotic_bound >= result.ect, "asymptotic bound dominates")

    trunc = cipc.SchemeConfig()
    trunc.scheme = cipc.Scheme.truncated
    trunc.q = 1.0
    trunc.p_a_max = 1.0
    trunc.p_b_max = 1.0
    trunc.rate = 0.5
    trunc.epsilon = 0.1
    pri = cipc.priors(trunc, sys_params)
    check(abs(pri.pi1 - 0.5 * math.exp(-1.0)) < 1e-12, "truncated priors")

    mc = cipc.McConfig()
    mc.n_draws = 200000
    mc.seed = 9
    est1 = cipc.simulate_outage(trunc, sys_params, mc)
    est2 = cipc.simulate_outage(trunc, sys_params, mc)
    check(est1.mean == est2.mean and est1.std_error == est2.std_error,
          "Monte Carlo determinism")

    ok, text = cipc.run_verify(trunc, sys_params, mc)
    check(ok and "verify: PASS" in text, "verify report")

    csv = cipc.figure_csv("fig3")
    check(csv.splitlines()[0] == "tau,alpha,beta,xi", "figure preset csv")

    try:
        cipc.parse_config_text("scheme = nonsense\n")
        check(False, "config error propagation")
    except cipc.ConfigError:
        check(True, "config error propagation")

    print("smoke test passed")


if __name__ == "__main__":
    main()
