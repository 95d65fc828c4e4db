"""Single-user measurement: probe qudit, controlled-shift gate, Kraus operators.

The signal is coupled to one probe qudit prepared in

    |omega> = cos(theta)|0> + gamma sin(theta) (1/sqrt(d)) sum_s |s>

through ``C_d |i>|s> = |i>|i+s mod d>`` and the probe is read out in the
computational basis. Every Kraus operator is diagonal with entry ``L`` on the
matching index and ``J`` elsewhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qlinalg import PureState

HALF_PI = math.pi / 2
# angles this close outside [0, pi/2] are treated as rounding and clamped
ANGLE_SLACK = 1e-12


def check_dim(d) -> int:
    if isinstance(d, bool) or int(d) != d:
        raise ValueError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return d


def check_theta(theta) -> float:
    theta = float(theta)
    if not math.isfinite(theta) or theta < -ANGLE_SLACK or theta > HALF_PI + ANGLE_SLACK:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta!r}")
    return min(max(theta, 0.0), HALF_PI)


@dataclass(frozen=True)
class ProbeConfig:
    d: int
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "d", check_dim(self.d))
        object.__setattr__(self, "theta", check_theta(self.theta))


def _cos_sin(theta: float) -> tuple[float, float]:
    # pin the endpoints so that the limiting models are exact
    if theta == 0.0:
        return 1.0, 0.0
    if theta == HALF_PI:
        return 0.0, 1.0
    return math.cos(theta), math.sin(theta)


def _root(d: int, c: float, s: float) -> float:
    return math.sqrt(c * c + d * s * s)


def gamma(config: ProbeConfig) -> float:
    """Normalization factor of the probe state.

    Evaluated in the rationalized form
    ``sqrt(d) sin / (sqrt(cos^2 + d sin^2) + cos)``, which equals
    ``(sqrt(1 + d tan^2) - 1) / (sqrt(d) tan)`` inside the open interval and
    takes the continuous limits 0 and 1 at the endpoints.
    """
    d = config.d
    c, s = _cos_sin(config.theta)
    return math.sqrt(d) * s / (_root(d, c, s) + c)


def diagonal_entries(config: ProbeConfig) -> tuple[float, float]:
    """Return ``(L, J)``: the matching and non-matching diagonal entries."""
    d = config.d
    c, s = _cos_sin(config.theta)
    # J = gamma sin / sqrt(d) simplifies to (R - cos) / d
    j = (_root(d, c, s) - c) / d
    return c + j, j


def probe_state(config: ProbeConfig) -> PureState:
    d = config.d
    c, s = _cos_sin(config.theta)
    amp = np.full(d, gamma(config) * s / math.sqrt(d), dtype=np.complex128)
    amp[0] += c
    return PureState(amp)


def cd_gate(d: int) -> np.ndarray:
    """Controlled shift on signal (x) probe, basis index ``i*d + s``."""
    d = check_dim(d)
    gate = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for s in range(d):
            gate[i * d + (i + s) % d, i * d + s] = 1.0
    return gate


@dataclass(frozen=True, eq=False)
class MeasurementModel:
    config: ProbeConfig
    kraus: tuple
    L: float
    J: float
    povm: tuple = field(init=False)

    def __post_init__(self):
        ops = tuple(np.asarray(a, dtype=np.complex128) for a in self.kraus)
        for a in ops:
            a.setflags(write=False)
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "povm", tuple(a.conj().T @ a for a in ops))

    @property
    def d(self) -> int:
        return self.config.d

    @property
    def theta(self) -> float:
        return self.config.theta

    def probabilities(self, psi) -> np.ndarray:
        """Outcome distribution ``<psi|A_k^dag A_k|psi>`` for a state vector."""
        vec = psi.amplitudes if isinstance(psi, PureState) else np.asarray(psi)
        # diagonal Kraus operators: p_k = sum_j |A_k[j,j]|^2 |psi_j|^2
        weights = np.abs(np.array([np.diag(a) for a in self.kraus])) ** 2
        return weights @ (np.abs(vec) ** 2)


def build_model(config: ProbeConfig) -> MeasurementModel:
    d = config.d
    L, J = diagonal_entries(config)
    kraus = []
    for k in range(d):
        diag = np.full(d, J, dtype=np.complex128)
        diag[k] = L
        kraus.append(np.diag(diag))
    return MeasurementModel(config, tuple(kraus), L, J)


def build_model_from_gate(config: ProbeConfig) -> MeasurementModel:
    """Same model obtained numerically as ``A_k = (I x <k|) C_d (I x |omega>)``."""
    d = config.d
    eye = np.eye(d, dtype=np.complex128)
    omega = probe_state(config).amplitudes.reshape(d, 1)
    coupled = cd_gate(d) @ np.kron(eye, omega)
    kraus = []
    for k in range(d):
        bra_k = np.zeros((1, d), dtype=np.complex128)
        bra_k[0, k] = 1.0
        kraus.append(np.kron(eye, bra_k) @ coupled)
    L = kraus[0][0, 0].real
    J = kraus[0][1, 1].real
    return MeasurementModel(config, tuple(kraus), L, J)


def apply_and_sample(model: MeasurementModel, psi: PureState, rng_seed=None):
    """Measure ``psi`` once.

    Returns ``(k, conditional_state, p_k)``. ``rng_seed`` may be an integer
    seed or a ``numpy.random.Generator`` owned by the caller.
    """
    if psi.dim != model.d:
        raise ValueError(f"state dimension {psi.dim} does not match model dimension {model.d}")
    rng = np.random.default_rng(rng_seed)
    probs = model.probabilities(psi)
    k = _sample_index(probs, rng)
    post = model.kraus[k] @ psi.amplitudes
    return k, PureState(post / math.sqrt(probs[k])), float(probs[k])


def _sample_index(probs: np.ndarray, rng: np.random.Generator) -> int:
    total = probs.sum()
    if not total > 1e-300:
        raise ValueError("outcome probabilities vanish: invalid state")
    cdf = np.cumsum(probs / total)
    k = int(np.searchsorted(cdf, rng.random(), side="right"))
    k = min(k, probs.size - 1)
    # never land on an impossible branch through cdf rounding
    while probs[k] == 0.0:
        k -= 1
    return k
