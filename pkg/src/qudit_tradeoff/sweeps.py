"""Row generators for the trade-off curves and CSV/JSON writers.

Rows are plain tuples of floats; writers format every float with 17
significant digits so files round-trip exactly and are byte-stable.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

import numpy as np

from .fidelity import FidelityPoint, analytic_FG, bound_check
from .sequential import (
    ChainConfig,
    estimation_fidelity_single_measure,
    transmission_fidelity_chain,
    transmission_fidelity_closed_form,
    two_user_fidelities,
)

TRADEOFF_HEADER = ("theta", "G", "F", "bound_slack")
SEQUENTIAL_HEADER = ("theta", "G", "F_N")
TWO_USER_HEADER = ("theta_a", "theta_b", "G", "F")

# angle sets used for the published curves
FIG3_DIMS = (2, 3, 4)
FIG3_USERS = (1, 2, 5, 10)
FIG4_THETA_A = (4 * math.pi / 9, math.pi / 3, 2 * math.pi / 9, math.pi / 9)


def theta_grid(n_points: int) -> np.ndarray:
    return np.linspace(0.0, math.pi / 2, n_points)


def tradeoff_rows(d: int, thetas: Iterable[float]) -> list[tuple]:
    rows = []
    for t in thetas:
        F, G = analytic_FG(d, t)
        slack = bound_check(FidelityPoint(G=G, F=F), d).slack
        rows.append((float(t), G, F, slack))
    return rows


def sequential_rows(d: int, n_users: int, thetas: Iterable[float]) -> list[tuple]:
    """Homogeneous N-user curve; F_N from the multinomial sum."""
    rows = []
    for t in thetas:
        G = estimation_fidelity_single_measure(d, t)
        rows.append((float(t), G, transmission_fidelity_closed_form(d, t, n_users)))
    return rows


def chain_row(d: int, thetas: Sequence[float], budget: int) -> tuple:
    """One heterogeneous chain evaluated by exact enumeration."""
    config = ChainConfig(d, tuple(thetas))
    F = transmission_fidelity_chain(config, budget=budget)
    G = estimation_fidelity_single_measure(d, config.thetas[-1])
    return (config.thetas[-1], G, F)


def two_user_rows(d: int, thetas_a: Iterable[float], thetas_b: Iterable[float]) -> list[tuple]:
    thetas_b = list(thetas_b)
    rows = []
    for ta in thetas_a:
        for tb in thetas_b:
            p = two_user_fidelities(d, ta, tb)
            rows.append((float(ta), float(tb), p.G, p.F))
    return rows


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def render(header: Sequence[str], rows: Sequence[Sequence], fmt_name: str = "csv") -> str:
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
        return buf.getvalue()
    if fmt_name == "json":
        records = [dict(zip(header, (float(v) for v in row))) for row in rows]
        return json.dumps(records, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt_name!r}")


def write_table(path, header, rows, fmt_name: str = "csv") -> None:
    text = render(header, rows, fmt_name)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def figure_commands() -> list[tuple[str, list[str]]]:
    """CLI invocations that regenerate the published curves as CSV files.

    Returns ``(filename, argv)`` pairs; append ``--out <path>`` to run them.
    """
    cmds = []
    for d in FIG3_DIMS:
        for n in FIG3_USERS:
            argv = ["sequential", "--dim", str(d), "--users", str(n), "--theta", "0:pi/2:50"]
            cmds.append((f"fig3_d{d}_N{n}.csv", argv))
    argv = ["two-user", "--dim", "2", "--theta-a", "4*pi/9,pi/3,2*pi/9,pi/9", "--theta-b", "0:pi/2:50"]
    cmds.append(("fig4_two_user.csv", argv))
    return cmds
