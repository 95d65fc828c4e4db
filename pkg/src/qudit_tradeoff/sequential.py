"""N-user transmission line built from the optimal single-user device.

Each user measures the conditional state left by the previous one. Because
every Kraus operator is diagonal, an outcome record acts on the signal only
through its multiplicities ``(n_0, ..., n_{d-1})``; the exact sums below are
available both over raw outcome sequences (the oracle) and over
multiplicities with multinomial weights (the fast path).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .fidelity import (
    ENUMERATION,
    FidelityPoint,
    analytic_FG,
    average_fidelity_banaszek,
    bound_check,
)
from .measurement import (
    MeasurementModel,
    ProbeConfig,
    apply_and_sample,
    build_model,
    check_dim,
    check_theta,
)
from .qlinalg import PureState, haar_random_states

DEFAULT_BUDGET = 10**6


class EnumerationBudgetError(RuntimeError):
    """Raised when an exact sum would exceed the enumeration budget."""


@dataclass(frozen=True)
class ChainConfig:
    d: int
    thetas: tuple

    def __post_init__(self):
        object.__setattr__(self, "d", check_dim(self.d))
        thetas = tuple(check_theta(t) for t in self.thetas)
        if not thetas:
            raise ValueError("a chain needs at least one user")
        object.__setattr__(self, "thetas", thetas)

    @classmethod
    def homogeneous(cls, d: int, theta: float, n_users: int) -> "ChainConfig":
        if n_users < 1:
            raise ValueError(f"n_users must be >= 1, got {n_users}")
        return cls(d, (theta,) * n_users)

    @property
    def n_users(self) -> int:
        return len(self.thetas)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.thetas)) == 1

    def models(self) -> tuple:
        return tuple(_model(self.d, t) for t in self.thetas)


@lru_cache(maxsize=256)
def _model(d: int, theta: float) -> MeasurementModel:
    return build_model(ProbeConfig(d, theta))


@dataclass(frozen=True)
class OutcomeSequence:
    outcomes: tuple
    probability: float
    multiplicities: tuple


@dataclass(frozen=True, eq=False)
class CollectiveEstimate:
    """Frequency-weighted diagonal estimate ``sum_j (n_j/N) |j><j|``."""

    multiplicities: tuple
    density: np.ndarray = field(init=False)

    def __post_init__(self):
        n = np.asarray(self.multiplicities, dtype=float)
        object.__setattr__(self, "density", np.diag(n / n.sum()).astype(np.complex128))


def _check_budget(n_terms: int, budget: int) -> None:
    if n_terms > budget:
        raise EnumerationBudgetError(
            f"exact enumeration needs {n_terms} terms, budget is {budget}; "
            "use transmission_fidelity_closed_form for homogeneous chains"
        )


def _multiplicities(outcomes: Sequence[int], d: int) -> tuple:
    counts = [0] * d
    for k in outcomes:
        counts[k] += 1
    return tuple(counts)


def chain_kraus(config: ChainConfig, outcomes: Sequence[int]) -> np.ndarray:
    """Ordered product ``A_{k_N} ... A_{k_1}`` (user 1 acts first)."""
    if len(outcomes) != config.n_users:
        raise ValueError(f"expected {config.n_users} outcomes, got {len(outcomes)}")
    d = config.d
    op = np.eye(d, dtype=np.complex128)
    for model, k in zip(config.models(), outcomes):
        if isinstance(k, bool) or int(k) != k or not 0 <= k < d:
            raise ValueError(f"outcome {k!r} out of range [0, {d})")
        op = model.kraus[int(k)] @ op
    return op


def _sequences(config: ChainConfig, budget: int) -> Iterator[tuple]:
    _check_budget(config.d ** config.n_users, budget)
    return itertools.product(range(config.d), repeat=config.n_users)


def enumerate_outcomes(
    config: ChainConfig, psi: PureState, budget: int = DEFAULT_BUDGET
) -> list[OutcomeSequence]:
    """Every outcome record with its joint probability for the signal ``psi``."""
    if psi.dim != config.d:
        raise ValueError(f"state dimension {psi.dim} does not match chain dimension {config.d}")
    out = []
    for seq in _sequences(config, budget):
        v = chain_kraus(config, seq) @ psi.amplitudes
        out.append(OutcomeSequence(seq, float(np.vdot(v, v).real), _multiplicities(seq, config.d)))
    return out


def marginal_outcome_distribution(config: ChainConfig, psi: PureState, user_index: int) -> np.ndarray:
    """Unconditional outcome distribution of user ``user_index`` (1-based).

    The earlier users' outcomes are summed over by propagating the
    unnormalized state through their non-selective operations.
    """
    if not 1 <= user_index <= config.n_users:
        raise ValueError(f"user_index must be in [1, {config.n_users}], got {user_index}")
    if psi.dim != config.d:
        raise ValueError(f"state dimension {psi.dim} does not match chain dimension {config.d}")
    models = config.models()
    rho = psi.projector()
    for model in models[: user_index - 1]:
        rho = sum(a @ rho @ a.conj().T for a in model.kraus)
    last = models[user_index - 1]
    return np.array([np.trace(a @ rho @ a.conj().T).real for a in last.kraus])


def transmission_fidelity_chain(config: ChainConfig, budget: int = DEFAULT_BUDGET) -> float:
    """F_N from the general Kraus formula over all ``d**N`` product operators."""
    kraus = [chain_kraus(config, seq) for seq in _sequences(config, budget)]
    # estimates are irrelevant to F; reuse |0>
    est = [PureState.basis(config.d, 0)] * len(kraus)
    return average_fidelity_banaszek(kraus, est).F


def compositions(n: int, parts: int) -> Iterator[tuple]:
    """All tuples of ``parts`` non-negative integers summing to ``n``."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def multinomial(counts: Sequence[int]) -> int:
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def transmission_fidelity_closed_form(d: int, theta: float, N: int) -> float:
    """F_N of a homogeneous chain via the multinomial sum over multiplicities.

    Each multiplicity vector ``n`` contributes ``N!/prod(n_i!)`` records whose
    product operator is ``diag(J**(N-n_i) * L**n_i)``.
    """
    d = check_dim(d)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    theta = check_theta(theta)
    if N == 1:
        # same expression as the single-user curve, so the two agree bitwise
        return analytic_FG(d, theta)[0]
    model = _model(d, theta)
    L, J = model.L, model.J
    s = 0.0
    for n in compositions(N, d):
        tr = sum(J ** (N - ni) * L**ni for ni in n)
        s += multinomial(n) * tr * tr
    return (d + s) / (d * (d + 1))


def estimation_fidelity_single_measure(d: int, theta_last: float) -> float:
    """G with the rule ``k_N -> |k_N>``; independent of the number of users."""
    return analytic_FG(check_dim(d), check_theta(theta_last))[1]


def estimation_fidelity_single_measure_chain(config: ChainConfig, budget: int = DEFAULT_BUDGET) -> float:
    """Same quantity by enumeration: each record is estimated by its last outcome."""
    kraus, est = [], []
    for seq in _sequences(config, budget):
        kraus.append(chain_kraus(config, seq))
        est.append(PureState.basis(config.d, seq[-1]))
    return average_fidelity_banaszek(kraus, est).G


def estimation_fidelity_collective(
    d: int, theta: float, N: int, budget: int = DEFAULT_BUDGET, method: str = "enumeration"
) -> float:
    """G when the whole record ``{k_i}`` is mapped to ``sum_j (n_j/N)|j><j|``.

    ``method="enumeration"`` sums over raw outcome records through the
    general Kraus formula; ``method="multiplicity"`` groups records by their
    counts.
    """
    config = ChainConfig.homogeneous(d, theta, N)
    if method == "enumeration":
        kraus, est = [], []
        for seq in _sequences(config, budget):
            kraus.append(chain_kraus(config, seq))
            est.append(CollectiveEstimate(_multiplicities(seq, d)).density)
        return average_fidelity_banaszek(kraus, est).G
    if method == "multiplicity":
        model = config.models()[0]
        L, J = model.L, model.J
        s = 0.0
        for n in compositions(N, d):
            # Tr[rho Pi] with Pi = diag(L**(2 n_i) J**(2 (N - n_i)))
            s += multinomial(n) * sum(ni / N * L ** (2 * ni) * J ** (2 * (N - ni)) for ni in n)
        return (d + s) / (d * (d + 1))
    raise ValueError(f"unknown method {method!r}")


def two_user_fidelities(d: int, theta_a: float, theta_b: float) -> FidelityPoint:
    """``(G, F)`` after user A (angle ``theta_a``) then user B (``theta_b``).

    G is the single-user value at ``theta_b``; F is summed over the ``d**2``
    products ``A_{k_B} A_{k_A}``.
    """
    config = ChainConfig(d, (theta_a, theta_b))
    F = transmission_fidelity_chain(config)
    G = estimation_fidelity_single_measure(d, config.thetas[1])
    return FidelityPoint(G=G, F=F, method=ENUMERATION, theta=config.thetas[1], theta_a=config.thetas[0])


def two_user_closed_form(theta_a: float, theta_b: float) -> float:
    """Qubit two-user transmission fidelity ``(2 + sin^2 a sin^2 b) / 3``.

    Expanded in double angles this reads
    ``[18 - 2cos2a - 2cos2b + cos2(a-b) + cos2(a+b)] / 24``.
    """
    a = check_theta(theta_a)
    b = check_theta(theta_b)
    return (2.0 + math.sin(a) ** 2 * math.sin(b) ** 2) / 3.0


def two_user_region(d: int, grid: int) -> list[FidelityPoint]:
    """Sweep both probe angles over a ``grid x grid`` lattice on ``[0, pi/2]``."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    thetas = np.linspace(0.0, math.pi / 2, grid)
    points = []
    for ta in thetas:
        for tb in thetas:
            p = two_user_fidelities(d, ta, tb)
            if bound_check(p, d).slack < -1e-9:
                raise AssertionError(f"bound violated at theta_a={ta}, theta_b={tb}: {p}")
            points.append(p)
    return points


@dataclass(frozen=True)
class TrajectoryStats:
    F: float
    G: float
    stderr_F: float
    stderr_G: float
    n_signals: int
    # outcome_counts[u, k]: how often user u+1 observed k
    outcome_counts: np.ndarray


def simulate_chain_trajectories(config: ChainConfig, n_signals: int, rng_seed=0) -> TrajectoryStats:
    """Run the stochastic line on Haar-random signals.

    Every signal gets its own child stream of ``rng_seed``. F is the mean
    overlap of the final conditional state with the input; G uses the last
    user's outcome with the rule ``k -> |k>``.
    """
    if n_signals < 1:
        raise ValueError(f"n_signals must be >= 1, got {n_signals}")
    d = config.d
    models = config.models()
    counts = np.zeros((config.n_users, d), dtype=np.int64)
    F = np.empty(n_signals)
    G = np.empty(n_signals)
    for i, ss in enumerate(np.random.SeedSequence(rng_seed).spawn(n_signals)):
        rng = np.random.default_rng(ss)
        psi = PureState(haar_random_states(d, 1, rng)[0])
        state = psi
        for u, model in enumerate(models):
            k, state, _ = apply_and_sample(model, state, rng)
            counts[u, k] += 1
        F[i] = psi.overlap(state)
        G[i] = abs(psi.amplitudes[k]) ** 2
    n = n_signals
    se = (lambda x: float(x.std(ddof=1) / math.sqrt(n))) if n > 1 else (lambda x: 0.0)
    return TrajectoryStats(float(F.mean()), float(G.mean()), se(F), se(G), n, counts)
