"""Self-check suite behind ``qudit-tradeoff verify``.

Each check compares two independent routes (or a route against a known
value) and records the worst deviation seen.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .fidelity import (
    FidelityPoint,
    analytic_FG,
    average_fidelity_analytic,
    average_fidelity_banaszek,
    average_fidelity_monte_carlo,
    bound_check,
)
from .measurement import ProbeConfig, build_model, build_model_from_gate
from .qlinalg import PureState, haar_random_state
from .sequential import (
    ChainConfig,
    estimation_fidelity_collective,
    estimation_fidelity_single_measure_chain,
    marginal_outcome_distribution,
    simulate_chain_trajectories,
    transmission_fidelity_chain,
    transmission_fidelity_closed_form,
    two_user_fidelities,
)

HALF_PI = math.pi / 2


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    limit: float
    detail: str = ""


def _grid(n):
    return np.linspace(0.0, HALF_PI, n)


def _check(name, measured, limit, detail="") -> CheckResult:
    return CheckResult(name, bool(measured <= limit), float(measured), float(limit), detail)


def check_completeness(tol):
    err = 0.0
    for d in range(2, 9):
        for t in _grid(50):
            m = build_model(ProbeConfig(d, t))
            total = sum(a.conj().T @ a for a in m.kraus)
            err = max(err, np.abs(total - np.eye(d)).max())
    return _check("kraus completeness d=2..8", err, tol)


def check_gate_route(tol):
    err = 0.0
    for d in (2, 3, 4, 5):
        for t in _grid(12):
            a = build_model(ProbeConfig(d, t))
            b = build_model_from_gate(ProbeConfig(d, t))
            err = max(err, max(np.abs(x - y).max() for x, y in zip(a.kraus, b.kraus)))
    return _check("kraus from C_d gate == closed form", err, tol)


def check_saturation(tol):
    worst = 0.0
    for d in (2, 3, 4, 8):
        for t in _grid(50):
            F, G = analytic_FG(d, t)
            worst = max(worst, abs(bound_check(FidelityPoint(G=G, F=F), d).slack))
    return _check("bound saturation max|slack|", worst, tol)


def check_extremes(tol):
    err = 0.0
    for d in range(2, 9):
        F, G = analytic_FG(d, HALF_PI)
        err = max(err, abs(F - 1), abs(G - 1 / d))
        F, G = analytic_FG(d, 0.0)
        err = max(err, abs(F - 2 / (d + 1)), abs(G - 2 / (d + 1)))
    return _check("extreme points", err, tol)


def check_banaszek_route(tol):
    err = 0.0
    for d in range(2, 9):
        est = [PureState.basis(d, k) for k in range(d)]
        for t in _grid(50):
            m = build_model(ProbeConfig(d, t))
            a = average_fidelity_analytic(m)
            b = average_fidelity_banaszek(m.kraus, est)
            err = max(err, abs(a.F - b.F), abs(a.G - b.G))
    return _check("analytic == Kraus-formula fidelities", err, tol)


def check_monte_carlo(n_sigma, n_samples=20000):
    worst = 0.0
    for d in (2, 3):
        for t in (0.2, 0.7, 1.2):
            m = build_model(ProbeConfig(d, t))
            a = average_fidelity_analytic(m)
            mc = average_fidelity_monte_carlo(m, n_samples, rng_seed=1234)
            worst = max(worst, abs(mc.F - a.F) / mc.stderr_F, abs(mc.G - a.G) / mc.stderr_G)
    return _check("Monte Carlo vs analytic (in stderr)", worst, n_sigma, f"n={n_samples}")


def check_sequential_closed_forms(tol):
    err = 0.0
    for t in _grid(10):
        s2 = math.sin(t) ** 2
        for N in range(1, 6):
            err = max(err, abs(transmission_fidelity_chain(ChainConfig.homogeneous(2, t, N)) - (2 + s2**N) / 3))
            err = max(err, abs(transmission_fidelity_chain(ChainConfig.homogeneous(3, t, N)) - (1 + s2**N) / 2))
        for N in range(1, 5):
            cf = transmission_fidelity_closed_form(4, t, N)
            err = max(err, abs(cf - transmission_fidelity_chain(ChainConfig.homogeneous(4, t, N))))
    return _check("F_N enumeration == closed forms", err, tol)


def check_g_independence(tol):
    err = 0.0
    for d in (2, 3, 4):
        for t in _grid(10):
            G = analytic_FG(d, t)[1]
            for N in range(1, 5):
                g = estimation_fidelity_single_measure_chain(ChainConfig.homogeneous(d, t, N))
                err = max(err, abs(g - G))
    return _check("single-measure G independent of N", err, tol)


def check_collective(tol):
    err = 0.0
    for d in (2, 3, 4):
        for t in _grid(10):
            G = analytic_FG(d, t)[1]
            for N in range(1, 5):
                err = max(err, abs(estimation_fidelity_collective(d, t, N) - G))
    return _check("collective G == single-user G (d<=4)", err, tol)


def check_marginals(tol):
    err = 0.0
    for d in (2, 3):
        psi = haar_random_state(d, 7 + d)
        config = ChainConfig(d, (0.3, 1.1, 0.6))
        for u in (1, 2, 3):
            single = build_model(ProbeConfig(d, config.thetas[u - 1])).probabilities(psi)
            err = max(err, np.abs(marginal_outcome_distribution(config, psi, u) - single).max())
    return _check("user marginal == single-user POVM", err, tol)


def check_two_user(tol, bound_tol):
    err = 0.0
    for ta in np.linspace(0.0, HALF_PI, 20):
        err = max(err, abs(two_user_fidelities(2, ta, HALF_PI).F - (5 - math.cos(2 * ta)) / 6))
    slice_slack = 0.0
    min_slack = math.inf
    grid = _grid(15)
    for tb in grid:
        slice_slack = max(slice_slack, abs(bound_check(two_user_fidelities(2, HALF_PI, tb), 2).slack))
        for ta in grid:
            min_slack = min(min_slack, bound_check(two_user_fidelities(2, ta, tb), 2).slack)
    results = [
        _check("two-user F2(a, pi/2) == (5-cos2a)/6", err, tol),
        _check("two-user theta_a=pi/2 slice saturates", slice_slack, bound_tol),
        _check("two-user grid never violates bound", -min_slack, bound_tol),
    ]
    return results


def check_trajectories(n_sigma, n_signals=20000):
    t = 0.7
    stats = simulate_chain_trajectories(ChainConfig.homogeneous(2, t, 2), n_signals, rng_seed=99)
    F = (2 + math.sin(t) ** 4) / 3
    G = analytic_FG(2, t)[1]
    worst = max(abs(stats.F - F) / stats.stderr_F, abs(stats.G - G) / stats.stderr_G)
    return _check("trajectory simulation vs closed forms (in stderr)", worst, n_sigma, f"n={n_signals}")


def run_checks(tolerance: Optional[float] = None, quick: bool = False) -> list[CheckResult]:
    """Run every check.

    ``tolerance`` overrides all deterministic tolerances (the statistical
    checks keep their 4-sigma limit).
    """

    def tol(default):
        return default if tolerance is None else tolerance

    steps: list[Callable[[], object]] = [
        lambda: check_completeness(tol(1e-12)),
        lambda: check_gate_route(tol(1e-12)),
        lambda: check_saturation(tol(1e-9)),
        lambda: check_extremes(tol(1e-12)),
        lambda: check_banaszek_route(tol(1e-12)),
        lambda: check_sequential_closed_forms(tol(1e-10)),
        lambda: check_g_independence(tol(1e-10)),
        lambda: check_collective(tol(1e-10)),
        lambda: check_marginals(tol(1e-12)),
        lambda: check_two_user(tol(1e-12), tol(1e-9)),
    ]
    if not quick:
        steps += [lambda: check_monte_carlo(4.0), lambda: check_trajectories(4.0)]
    results = []
    for step in steps:
        out = step()
        results.extend(out if isinstance(out, list) else [out])
    return results


def format_report(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  status  measured     limit"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        extra = f"  ({r.detail})" if r.detail else ""
        lines.append(f"{r.name:<{width}}  {status}    {r.measured:.3e}  {r.limit:.3e}{extra}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)
