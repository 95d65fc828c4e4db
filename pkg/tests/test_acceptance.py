"""Exit criteria. Each test records one PASS/FAIL line shown in the pytest summary."""
import math
import time
from pathlib import Path

import numpy as np

from qudit_tradeoff.cli import main
from qudit_tradeoff.fidelity import (
    FidelityPoint,
    analytic_FG,
    average_fidelity_analytic,
    average_fidelity_banaszek,
    average_fidelity_monte_carlo,
    bound_check,
)
from qudit_tradeoff.measurement import ProbeConfig, build_model
from qudit_tradeoff.qlinalg import PureState
from qudit_tradeoff.sequential import (
    ChainConfig,
    estimation_fidelity_collective,
    estimation_fidelity_single_measure_chain,
    simulate_chain_trajectories,
    transmission_fidelity_chain,
    transmission_fidelity_closed_form,
    two_user_fidelities,
)
from qudit_tradeoff.sweeps import figure_commands

HALF_PI = math.pi / 2
GOLDEN = Path(__file__).parent / "golden"


def test_ac1_single_user_optimality(acceptance_report):
    start = time.perf_counter()
    worst = 0.0
    for d in (2, 3, 4, 8):
        for t in np.linspace(0, HALF_PI, 50):
            F, G = analytic_FG(d, t)
            worst = max(worst, abs(bound_check(FidelityPoint(G=G, F=F), d).slack))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 1.0
    acceptance_report("AC1 single-user optimality", ok, f"max|slack|={worst:.2e} (<=1e-9), {elapsed:.3f}s (<1s)")
    assert ok


def test_ac2_extremes(acceptance_report):
    err = 0.0
    for d in range(2, 9):
        F, G = analytic_FG(d, HALF_PI)
        err = max(err, abs(F - 1), abs(G - 1 / d))
        F, G = analytic_FG(d, 0.0)
        err = max(err, abs(F - 2 / (d + 1)), abs(G - 2 / (d + 1)))
    ok = err <= 1e-12
    acceptance_report("AC2 extremes", ok, f"max error={err:.2e} (<=1e-12)")
    assert ok


def test_ac3_route_agreement(acceptance_report):
    start = time.perf_counter()
    exact_err = 0.0
    worst_sigma = 0.0
    for d in (2, 3):
        est = [PureState.basis(d, k) for k in range(d)]
        for t in (0.2, 0.7, 1.2):
            m = build_model(ProbeConfig(d, t))
            a = average_fidelity_analytic(m)
            b = average_fidelity_banaszek(m.kraus, est)
            mc = average_fidelity_monte_carlo(m, 200000, rng_seed=20070101)
            exact_err = max(exact_err, abs(a.F - b.F), abs(a.G - b.G))
            worst_sigma = max(worst_sigma, abs(mc.F - a.F) / mc.stderr_F, abs(mc.G - a.G) / mc.stderr_G)
    elapsed = time.perf_counter() - start
    ok = exact_err <= 1e-12 and worst_sigma <= 4 and elapsed < 30
    acceptance_report(
        "AC3 route agreement",
        ok,
        f"exact diff={exact_err:.2e} (<=1e-12), MC worst={worst_sigma:.2f} stderr (<=4), {elapsed:.2f}s (<30s)",
    )
    assert ok


def test_ac4_sequential_closed_forms(acceptance_report):
    start = time.perf_counter()
    err = 0.0
    for t in np.linspace(0, HALF_PI, 10):
        s2 = math.sin(t) ** 2
        for N in range(1, 6):
            err = max(err, abs(transmission_fidelity_chain(ChainConfig.homogeneous(2, t, N)) - (2 + s2**N) / 3))
            err = max(err, abs(transmission_fidelity_chain(ChainConfig.homogeneous(3, t, N)) - (1 + s2**N) / 2))
        for N in range(1, 5):
            enum = transmission_fidelity_chain(ChainConfig.homogeneous(4, t, N))
            err = max(err, abs(transmission_fidelity_closed_form(4, t, N) - enum))
    elapsed = time.perf_counter() - start
    ok = err <= 1e-10 and elapsed < 10
    acceptance_report("AC4 sequential closed forms", ok, f"max error={err:.2e} (<=1e-10), {elapsed:.2f}s (<10s)")
    assert ok


def test_ac5_estimation_independent_of_users(acceptance_report):
    start = time.perf_counter()
    err = 0.0
    for d in (2, 3, 4):
        for t in np.linspace(0, HALF_PI, 10):
            G = analytic_FG(d, t)[1]
            for N in range(1, 5):
                err = max(err, abs(estimation_fidelity_single_measure_chain(ChainConfig.homogeneous(d, t, N)) - G))
    elapsed = time.perf_counter() - start
    ok = err <= 1e-10 and elapsed < 10
    acceptance_report("AC5 N-independence of G", ok, f"max error={err:.2e} (<=1e-10), {elapsed:.2f}s (<10s)")
    assert ok


def test_ac6_collective_inference(acceptance_report):
    start = time.perf_counter()
    err = 0.0
    for d in (2, 3, 4):
        for t in np.linspace(0, HALF_PI, 10):
            G = analytic_FG(d, t)[1]
            for N in range(1, 5):
                err = max(err, abs(estimation_fidelity_collective(d, t, N) - G))
    elapsed = time.perf_counter() - start
    ok = err <= 1e-10 and elapsed < 30
    acceptance_report("AC6 collective inference", ok, f"max error={err:.2e} (<=1e-10), {elapsed:.2f}s (<30s)")
    assert ok


def test_ac7_two_user_optimization(acceptance_report):
    start = time.perf_counter()
    special = 0.0
    for ta in np.linspace(0, HALF_PI, 20):
        special = max(special, abs(two_user_fidelities(2, ta, HALF_PI).F - (5 - math.cos(2 * ta)) / 6))
    grid = np.linspace(0, HALF_PI, 25)
    slice_slack = 0.0
    diag_err = 0.0
    min_slack = math.inf
    for tb in grid:
        slice_slack = max(slice_slack, abs(bound_check(two_user_fidelities(2, HALF_PI, tb), 2).slack))
        diag_err = max(diag_err, abs(two_user_fidelities(2, tb, tb).F - transmission_fidelity_closed_form(2, tb, 2)))
        for ta in grid:
            min_slack = min(min_slack, bound_check(two_user_fidelities(2, ta, tb), 2).slack)
    elapsed = time.perf_counter() - start
    ok = special <= 1e-12 and slice_slack <= 1e-9 and diag_err <= 1e-12 and min_slack >= -1e-9 and elapsed < 5
    acceptance_report(
        "AC7 two-user optimization",
        ok,
        f"F2(a,pi/2) err={special:.2e}, pi/2 slice |slack|={slice_slack:.2e}, "
        f"diagonal err={diag_err:.2e}, min slack={min_slack:.2e}, {elapsed:.2f}s (<5s)",
    )
    assert ok


def test_ac8_stochastic_chain(acceptance_report):
    start = time.perf_counter()
    t = 0.7
    stats = simulate_chain_trajectories(ChainConfig.homogeneous(2, t, 2), 100000, rng_seed=2007)
    F = (2 + math.sin(t) ** 4) / 3
    G = analytic_FG(2, t)[1]
    zF = abs(stats.F - F) / stats.stderr_F
    zG = abs(stats.G - G) / stats.stderr_G
    elapsed = time.perf_counter() - start
    ok = zF <= 4 and zG <= 4 and elapsed < 60
    acceptance_report("AC8 stochastic chain", ok, f"F off by {zF:.2f} stderr, G by {zG:.2f} stderr (<=4), {elapsed:.1f}s (<60s)")
    assert ok


def test_ac9_figure_data_regression(acceptance_report, tmp_path):
    mismatched = []
    for name, argv in figure_commands():
        outputs = []
        for run in ("a", "b"):
            path = tmp_path / f"{run}_{name}"
            assert main(argv + ["--out", str(path)]) == 0
            outputs.append(path.read_bytes())
        golden = (GOLDEN / name).read_bytes()
        if not (outputs[0] == outputs[1] == golden):
            mismatched.append(name)
    n = len(figure_commands())
    ok = not mismatched
    acceptance_report("AC9 figure data regression", ok, f"{n - len(mismatched)}/{n} files byte-identical to golden")
    assert ok, mismatched
