"""Transmission (F) and estimation (G) fidelities and the trade-off bound.

Signals are drawn from all pure qudit states under the Haar measure. Three
routes are provided: closed forms for the optimal family, the general Kraus
formulas valid for any complete measurement, and Monte Carlo averages of the
per-state fidelities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .measurement import MeasurementModel, ProbeConfig, build_model
from .qlinalg import PureState, haar_random_states

ANALYTIC = "analytic"
MONTE_CARLO = "monte_carlo"
ENUMERATION = "enumeration"

COMPLETENESS_TOL = 1e-9
MC_CHUNK = 1 << 14


@dataclass(frozen=True)
class FidelityPoint:
    G: float
    F: float
    method: str = ANALYTIC
    stderr_G: float = 0.0
    stderr_F: float = 0.0
    theta: Optional[float] = None
    # first user's angle, two-user points only
    theta_a: Optional[float] = None


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    rhs: float
    slack: float
    saturated: bool


def fidelity_per_state(model: MeasurementModel, psi: PureState) -> tuple[float, float]:
    """Return ``(F_psi, G_psi)`` for one signal, estimates ``k -> |k>``."""
    if psi.dim != model.d:
        raise ValueError(f"state dimension {psi.dim} does not match model dimension {model.d}")
    F, G = _per_state_batch(model.kraus, np.eye(model.d), psi.amplitudes[None, :])
    return float(F[0]), float(G[0])


def _per_state_batch(kraus, estimates, states):
    """Vectorized per-state fidelities.

    ``estimates`` holds one estimate vector per row. ``states`` is ``(n, d)``.
    """
    K = np.asarray(kraus)
    povm = np.einsum("kji,kjl->kil", K.conj(), K)
    bra = states.conj()
    amps = np.einsum("ni,kij,nj->nk", bra, K, states)
    probs = np.einsum("ni,kij,nj->nk", bra, povm, states).real
    guess = np.abs(states @ np.asarray(estimates).conj().T) ** 2
    F = np.sum(np.abs(amps) ** 2, axis=1)
    G = np.sum(probs * guess, axis=1)
    return F, G


def analytic_FG(d: int, theta: float) -> tuple[float, float]:
    """Closed-form ``(F, G)`` of the optimal single-user scheme."""
    model = build_model(ProbeConfig(d, theta))
    L, J = model.L, model.J
    F = (1.0 + (L + (d - 1) * J) ** 2) / (d + 1)
    G = (1.0 + L * L) / (d + 1)
    return F, G


def average_fidelity_analytic(model: MeasurementModel) -> FidelityPoint:
    F, G = analytic_FG(model.d, model.theta)
    return FidelityPoint(G=G, F=F, method=ANALYTIC, theta=model.theta)


def check_completeness(kraus, tol: float = COMPLETENESS_TOL) -> int:
    ops = [np.asarray(a, dtype=np.complex128) for a in kraus]
    if not ops:
        raise ValueError("empty Kraus set")
    d = ops[0].shape[0]
    total = sum(a.conj().T @ a for a in ops)
    err = np.max(np.abs(total - np.eye(d)))
    if err > tol:
        raise ValueError(f"Kraus set is not complete: max|sum A^dag A - I| = {err:.3e}")
    return d


def _estimate_term(estimate, povm_k: np.ndarray) -> float:
    """<phi|Pi|phi> for a pure estimate, Tr[rho Pi] for a density matrix."""
    if isinstance(estimate, PureState):
        v = estimate.amplitudes
        return float(np.vdot(v, povm_k @ v).real)
    est = np.asarray(estimate, dtype=np.complex128)
    if est.ndim == 1:
        return float(np.vdot(est, povm_k @ est).real)
    return float(np.trace(est @ povm_k).real)


def average_fidelity_banaszek(kraus: Sequence, estimates: Sequence) -> FidelityPoint:
    """Haar-averaged fidelities of an arbitrary complete Kraus set.

    ``F = (d + sum_k |Tr A_k|^2) / (d(d+1))`` and
    ``G = (d + sum_k <phi_k|Pi_k|phi_k>) / (d(d+1))``.

    An estimate may be a :class:`PureState`, a state vector, or a density
    matrix; for the latter the G term is ``Tr[rho_k Pi_k]``.
    """
    d = check_completeness(kraus)
    if len(estimates) != len(kraus):
        raise ValueError(f"{len(kraus)} Kraus operators but {len(estimates)} estimates")
    f_sum = 0.0
    g_sum = 0.0
    for a, est in zip(kraus, estimates):
        a = np.asarray(a, dtype=np.complex128)
        f_sum += abs(np.trace(a)) ** 2
        g_sum += _estimate_term(est, a.conj().T @ a)
    norm = d * (d + 1)
    return FidelityPoint(G=(d + g_sum) / norm, F=(d + f_sum) / norm, method=ANALYTIC)


def average_fidelity_monte_carlo(model: MeasurementModel, n_samples: int, rng_seed=0) -> FidelityPoint:
    """Sample mean of the per-state fidelities over Haar-random signals.

    Samples are split into fixed-size chunks, each with its own child stream
    of ``rng_seed``, so the result does not depend on how chunks are
    scheduled.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    n_chunks = -(-n_samples // MC_CHUNK)
    streams = np.random.SeedSequence(rng_seed).spawn(n_chunks)
    estimates = np.eye(model.d)
    Fs, Gs = [], []
    for i, ss in enumerate(streams):
        size = min(MC_CHUNK, n_samples - i * MC_CHUNK)
        states = haar_random_states(model.d, size, np.random.default_rng(ss))
        F, G = _per_state_batch(model.kraus, estimates, states)
        Fs.append(F)
        Gs.append(G)
    F = np.concatenate(Fs)
    G = np.concatenate(Gs)
    return FidelityPoint(
        G=float(G.mean()),
        F=float(F.mean()),
        method=MONTE_CARLO,
        stderr_G=_stderr(G),
        stderr_F=_stderr(F),
        theta=model.theta,
    )


def _stderr(x: np.ndarray) -> float:
    if x.size < 2:
        return 0.0
    return float(x.std(ddof=1) / math.sqrt(x.size))


def bound_reference(d: int) -> tuple[float, float, float]:
    """``(F0, G0, rhs)`` of the information/disturbance inequality."""
    F0 = 0.5 * (d + 2) / (d + 1)
    G0 = 0.5 * 3 / (d + 1)
    return F0, G0, (d - 1) / (d + 1) ** 2


def bound_check(point: FidelityPoint, d: int, tolerance: float = 1e-9) -> BoundReport:
    F0, G0, rhs = bound_reference(d)
    x = point.F - F0
    y = point.G - G0
    lhs = x * x + d * d * y * y + 2 * (d - 2) * x * y
    slack = rhs - lhs
    return BoundReport(lhs=lhs, rhs=rhs, slack=slack, saturated=abs(slack) <= tolerance)


def max_transmission_fidelity(G: float, d: int) -> float:
    """Largest F compatible with estimation fidelity ``G``.

    Upper root of the inequality, defined for ``1/(d+1) <= G <= 2/(d+1)``.
    Points below this branch but outside the ellipse (e.g. measurements whose
    Kraus phases push F under ``2/(d+1)``) are still physical.
    """
    F0, G0, rhs = bound_reference(d)
    y = G - G0
    disc = rhs - 4 * (d - 1) * y * y
    if disc < -1e-12:
        raise ValueError(f"G={G!r} outside [1/(d+1), 2/(d+1)] for d={d}")
    return F0 - (d - 2) * y + math.sqrt(max(disc, 0.0))


def tradeoff_curve(d: int, n_points: int) -> list[FidelityPoint]:
    """Optimal ``(G, F)`` points for ``theta`` evenly spaced on ``[0, pi/2]``."""
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    thetas = np.linspace(0.0, math.pi / 2, n_points)
    return [average_fidelity_analytic(build_model(ProbeConfig(d, t))) for t in thetas]
