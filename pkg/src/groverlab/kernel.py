"""Construction of Grover operators and Grover kernels.

A Grover operator is a unitary with at most two distinct eigenvalues,
written lam1*P + lam2*(1-P) for a rank-1 projector P.  A Grover kernel is
the product of two such operators: the first reflects about the marked
basis state, the second about a chosen superposition direction.  The
kernel preserves the plane spanned by the marked state |x0> and the
uniform superposition |xp> of the remaining states, which is where the
2x2 reduced forms below live (ordered basis: |x0> first, |xp> second).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import atan2
from typing import Optional

import numpy as np

from .algebra import TOL_EXACT, as_matrix, as_vector, dft_matrix, outer
from .errors import (
    DegenerateSubspaceError,
    InvalidSizeError,
    NormalizationError,
    ResourceLimitError,
)

__all__ = [
    "MAX_FULL_SIZE",
    "GroverPhases",
    "ReducedKernel",
    "ExtendedAmplitudes",
    "FullSpaceConfig",
    "grover_operator",
    "reduced_kernel",
    "extended_reduced_kernel",
    "momentum_projector",
    "full_kernel",
    "dft_conjugate",
]

# Full N x N simulation is desk-scale by design.
MAX_FULL_SIZE = 4096

# Phases within this distance of the unit circle are renormalized onto it;
# anything farther is rejected as genuinely non-unitary input.
PHASE_SNAP_TOL = 1e-9


def _unit_phase(z: complex, name: str) -> complex:
    z = complex(z)
    r = abs(z)
    if abs(r - 1.0) > PHASE_SNAP_TOL:
        raise NormalizationError(f"{name} must have unit modulus, got |{name}| = {r}")
    return z / r


@dataclass(frozen=True)
class GroverPhases:
    """The four unit-modulus eigenvalue parameters of a kernel.

    ``alpha``/``beta`` belong to the marked-state reflection (eigenvalue on
    the marked state and on its complement respectively), ``gamma``/``delta``
    to the superposition reflection.  The family studied here fixes
    alpha = gamma = -1 and varies beta and delta.
    """

    beta: complex
    delta: complex
    alpha: complex = -1.0 + 0.0j
    gamma: complex = -1.0 + 0.0j

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, _unit_phase(getattr(self, name), name))

    @classmethod
    def from_angles(cls, beta_phase: float, delta_phase: float,
                    alpha_phase: float = np.pi, gamma_phase: float = np.pi) -> "GroverPhases":
        """Build from phase angles in radians (angle t maps to e^{it})."""
        e = lambda t: complex(np.cos(t), np.sin(t))
        return cls(beta=e(beta_phase), delta=e(delta_phase),
                   alpha=e(alpha_phase), gamma=e(gamma_phase))

    @property
    def phi(self) -> float:
        """Principal family angle in (-pi, pi], defined by delta = e^{i phi}."""
        return atan2(self.delta.imag, self.delta.real)


@dataclass(frozen=True)
class ReducedKernel:
    """A 2x2 unitary kernel block plus the list size it represents.

    ``size`` is None for kernels built from a general superposition overlap,
    where no particular list size is implied.
    """

    matrix: np.ndarray
    size: Optional[int] = None

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        if m.shape != (2, 2):
            raise InvalidSizeError(f"reduced kernel must be 2x2, got {m.shape}")
        resid = np.max(np.abs(m.conj().T @ m - np.eye(2)))
        if resid > TOL_EXACT:
            raise NormalizationError(f"reduced kernel is not unitary (residual {resid:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class ExtendedAmplitudes:
    """Normalized amplitudes of a general superposition direction.

    The first entry is the overlap with the marked state; it must be real,
    strictly positive, and strictly less than 1 so that a two-dimensional
    search plane survives.
    """

    amps: np.ndarray

    def __post_init__(self):
        a = as_vector(self.amps).copy()
        if abs(np.linalg.norm(a) - 1.0) > TOL_EXACT:
            raise NormalizationError("amplitudes must be unit-norm")
        if abs(a[0].imag) > TOL_EXACT or a[0].real <= 0:
            raise NormalizationError("leading amplitude must be real and strictly positive")
        if np.linalg.norm(a[1:]) <= TOL_EXACT:
            raise DegenerateSubspaceError(
                "all weight on the marked state leaves no search plane")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    @property
    def alpha1(self) -> float:
        return float(self.amps[0].real)


@dataclass(frozen=True)
class FullSpaceConfig:
    """Everything needed to build a full N x N kernel.

    ``marked`` is the index of the searched-for element; ``k0`` is the unit
    direction whose reflection forms the second factor.
    """

    size: int
    marked: int
    k0: np.ndarray
    phases: GroverPhases = field(default_factory=lambda: GroverPhases(1.0, 1.0))

    def __post_init__(self):
        if self.size < 2:
            raise InvalidSizeError(f"list size must be >= 2, got {self.size}")
        if not 0 <= self.marked < self.size:
            raise IndexError(f"marked index {self.marked} outside [0, {self.size})")
        v = as_vector(self.k0).copy()
        if v.shape[0] != self.size:
            raise InvalidSizeError(f"k0 has dim {v.shape[0]}, expected {self.size}")
        if abs(np.linalg.norm(v) - 1.0) > TOL_EXACT:
            raise NormalizationError("k0 must be unit-norm")
        v.setflags(write=False)
        object.__setattr__(self, "k0", v)


def grover_operator(p: np.ndarray, lam1: complex, lam2: complex) -> np.ndarray:
    """lam1 on span{p}, lam2 on its orthocomplement: lam1 p p* + lam2 (1 - p p*)."""
    v = as_vector(p)
    if abs(np.linalg.norm(v) - 1.0) > TOL_EXACT:
        raise NormalizationError("projector direction must be unit-norm")
    lam1 = _unit_phase(lam1, "lam1")
    lam2 = _unit_phase(lam2, "lam2")
    proj = outer(v, v)
    return lam1 * proj + lam2 * (np.eye(v.shape[0]) - proj)


def reduced_kernel(beta: complex, delta: complex, n: int) -> ReducedKernel:
    """The kernel restricted to the search plane, for a uniform superposition.

    With s = sqrt(n-1) the block is

        (1/n) [[1 + delta (1 - n),  -beta (1 + delta) s],
               [(1 + delta) s,       beta (1 + delta - n)]].

    beta = delta = -1 gives the identity (the trivial member of the family);
    beta = delta = 1 is the textbook search kernel.
    """
    if n < 2:
        raise InvalidSizeError(f"list size must be >= 2, got {n}")
    beta = _unit_phase(beta, "beta")
    delta = _unit_phase(delta, "delta")
    s = np.sqrt(n - 1)
    m = np.array([
        [1 + delta * (1 - n), -beta * (1 + delta) * s],
        [(1 + delta) * s, beta * (1 + delta - n)],
    ]) / n
    return ReducedKernel(m, size=n)


def extended_reduced_kernel(beta: complex, delta: complex, alpha1: float) -> ReducedKernel:
    """Reduced kernel for a general superposition with marked-state overlap alpha1.

    With D = 1 + delta and c = sqrt(1 - alpha1^2):

        [[-delta + D alpha1^2,  -beta D alpha1 c],
         [D alpha1 c,            beta (D alpha1^2 - 1)]].

    Setting alpha1 = 1/sqrt(n) recovers reduced_kernel(beta, delta, n)
    entrywise.  alpha1 in {0, 1} collapses the search plane and is rejected.
    """
    if not 0.0 < alpha1 < 1.0:
        raise DegenerateSubspaceError(
            f"overlap must lie strictly between 0 and 1, got {alpha1}")
    beta = _unit_phase(beta, "beta")
    delta = _unit_phase(delta, "delta")
    big_d = 1 + delta
    c = np.sqrt(1 - alpha1 * alpha1)
    m = np.array([
        [-delta + big_d * alpha1**2, -beta * big_d * alpha1 * c],
        [big_d * alpha1 * c, beta * (big_d * alpha1**2 - 1)],
    ])
    return ReducedKernel(m, size=None)


def momentum_projector(y0: int, n: int) -> np.ndarray:
    """Projector onto the momentum basis state with wavenumber y0.

    Entry (x, xp) is exp(2*pi*i*(x - xp)*y0/n)/n; the row-minus-column sign
    matches the forward transform of ``dft_matrix``, so this equals
    dft_conjugate applied to the coordinate projector |y0><y0|.  y0 = 0
    gives the uniform projector with every entry 1/n.
    """
    if n < 1:
        raise InvalidSizeError(f"size must be >= 1, got {n}")
    if not 0 <= y0 < n:
        raise IndexError(f"wavenumber {y0} outside [0, {n})")
    x = np.arange(n)
    return np.exp(2j * np.pi * (x[:, None] - x[None, :]) * y0 / n) / n


def full_kernel(cfg: FullSpaceConfig) -> np.ndarray:
    """The full N x N kernel G2 G1 of a configuration.

    Assembled from rank-1 updates rather than a dense matrix product, which
    keeps construction O(N^2) at the largest supported sizes.
    """
    if cfg.size > MAX_FULL_SIZE:
        raise ResourceLimitError(
            f"full-space kernel limited to N <= {MAX_FULL_SIZE}, got {cfg.size}")
    ph = cfg.phases
    e = np.zeros(cfg.size, dtype=complex)
    e[cfg.marked] = 1.0
    k = cfg.k0
    # (delta + (gamma-delta) kk*)(beta + (alpha-beta) ee*), expanded.
    ca = ph.alpha - ph.beta
    cg = ph.gamma - ph.delta
    m = (ph.beta * ph.delta) * np.eye(cfg.size, dtype=complex)
    m += (ph.delta * ca) * outer(e, e)
    m += (ph.beta * cg) * outer(k, k)
    m += (ca * cg * np.vdot(k, e)) * outer(k, e)
    return m


def dft_conjugate(m: np.ndarray) -> np.ndarray:
    """Conjugate a square matrix into the momentum basis: U M U^{-1}."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise InvalidSizeError(f"conjugation needs a square matrix, got {a.shape}")
    u = dft_matrix(a.shape[0])
    return u @ a @ u.conj().T
