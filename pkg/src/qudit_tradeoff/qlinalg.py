"""Dense complex linear algebra and Haar-random pure states.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The helpers here
only add the shape checks the rest of the package relies on.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def trace(a) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace of non-square matrix {a.shape}")
    return complex(np.trace(a))


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit complex vector. The global phase is left as given."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amp.size < 1:
            raise ValueError("empty state vector")
        norm = np.vdot(amp, amp).real
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: <psi|psi> = {norm!r}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def from_vector(cls, vec) -> "PureState":
        """Normalize ``vec`` and wrap it."""
        vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(vec / norm)

    @classmethod
    def basis(cls, d: int, k: int) -> "PureState":
        vec = np.zeros(d, dtype=np.complex128)
        vec[k] = 1.0
        return cls(vec)

    def overlap(self, other: "PureState") -> float:
        """|<self|other>|^2"""
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def _gaussian_vectors(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_random_states(d: int, n: int, rng=None) -> np.ndarray:
    """Draw ``n`` Haar-random pure states of dimension ``d``.

    Returns an ``(n, d)`` array whose rows are unit vectors. Complex Gaussian
    amplitudes normalized to one are exactly unitarily invariant.

    Parameters
    ----------
    d : int
        Hilbert-space dimension, at least 2.
    n : int
        Number of samples.
    rng : int, numpy.random.Generator or None
        Seed or generator, passed through ``numpy.random.default_rng``.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    return _gaussian_vectors(d, n, np.random.default_rng(rng))


def haar_random_state(d: int, rng_seed=None) -> PureState:
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    rng = np.random.default_rng(rng_seed)
    return PureState(_gaussian_vectors(d, 1, rng)[0])
