"""Iterated search evolution and success-probability statistics.

The primary path is plain repeated application of the kernel to a running
state, which is exact to machine precision and makes no spectral
assumptions; the closed-form amplitude is the cross-check, not the engine.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .algebra import TOL_EXACT, as_vector
from .errors import (
    InvalidSizeError,
    NormalizationError,
    PeakedInitialStateWarning,
    ResourceLimitError,
)
from .kernel import MAX_FULL_SIZE, FullSpaceConfig, ReducedKernel
from .spectral import SpectralData

__all__ = [
    "InitialState",
    "EvolutionTrace",
    "uniform_initial",
    "amplitude_iterative",
    "amplitude_closed_form",
    "probability_trace",
    "full_space_trace",
    "perturbed_peak_estimate",
]


@dataclass(frozen=True)
class InitialState:
    """Reduced-plane coefficients of the starting state.

    The state is (a/sqrt(n)) |x0> + b sqrt((n-1)/n) |xp>, so normalization
    requires |a|^2/n + |b|^2 (n-1)/n = 1.  The uniform start is a = b = 1.
    """

    a: complex
    b: complex
    size: int

    def __post_init__(self):
        if self.size < 2:
            raise InvalidSizeError(f"list size must be >= 2, got {self.size}")
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        norm = (abs(self.a) ** 2 + abs(self.b) ** 2 * (self.size - 1)) / self.size
        if abs(norm - 1.0) > TOL_EXACT:
            raise NormalizationError(f"coefficients are not normalized (got {norm})")

    @classmethod
    def complete(cls, a: complex, size: int) -> "InitialState":
        """Fill in the real nonnegative b that normalizes a given a."""
        rem = size - abs(complex(a)) ** 2
        if rem < 0:
            raise NormalizationError(f"|a|^2 = {abs(a) ** 2} exceeds the list size {size}")
        return cls(a, np.sqrt(rem / (size - 1)), size)

    def reduced_vector(self) -> np.ndarray:
        return np.array([self.a / np.sqrt(self.size),
                         self.b * np.sqrt((self.size - 1) / self.size)])


@dataclass(frozen=True)
class EvolutionTrace:
    """Success probabilities P(m) for m = 0..m_max plus summary statistics.

    ``maxima_count`` counts strict interior local maxima (P(m) above both
    neighbors; endpoints excluded).  ``threshold_step`` is the first m with
    P(m) > 1/2, or None if the trace never crosses.
    """

    steps: np.ndarray
    probs: np.ndarray
    peak_prob: float
    peak_step: int
    maxima_count: int
    threshold_step: Optional[int]

    @classmethod
    def from_probs(cls, probs: np.ndarray) -> "EvolutionTrace":
        probs = np.asarray(probs, dtype=float)
        peak = int(np.argmax(probs))
        interior = (probs[1:-1] > probs[:-2]) & (probs[1:-1] > probs[2:])
        crossings = np.nonzero(probs > 0.5)[0]
        return cls(
            steps=np.arange(probs.shape[0]),
            probs=probs,
            peak_prob=float(probs[peak]),
            peak_step=peak,
            maxima_count=int(np.count_nonzero(interior)),
            threshold_step=int(crossings[0]) if crossings.size else None,
        )


def uniform_initial(n: int) -> InitialState:
    """The equal-superposition start a = b = 1."""
    return InitialState(1.0, 1.0, n)


def _reduced_input(k: ReducedKernel, s: Union[InitialState, np.ndarray]) -> np.ndarray:
    if isinstance(s, InitialState):
        if k.size is not None and s.size != k.size:
            raise InvalidSizeError(
                f"state is for size {s.size}, kernel for size {k.size}")
        return s.reduced_vector()
    v = as_vector(s)
    if v.shape[0] != 2:
        raise InvalidSizeError(f"reduced input must have dim 2, got {v.shape[0]}")
    if abs(np.linalg.norm(v) - 1.0) > TOL_EXACT:
        raise NormalizationError("reduced input must be unit-norm")
    return v


def amplitude_iterative(k: ReducedKernel, s: Union[InitialState, np.ndarray],
                        m: int) -> complex:
    """Marked-state amplitude after m kernel applications, by iteration."""
    if m < 0:
        raise InvalidSizeError(f"step count must be >= 0, got {m}")
    v = _reduced_input(k, s)
    for _ in range(m):
        v = k.matrix @ v
    return complex(v[0])


def amplitude_closed_form(spec: SpectralData, s: InitialState, m: int) -> complex:
    """Marked-state amplitude after m steps from the eigensystem.

    Evaluates e^{i m w1} (a/sqrt(n) + (e^{i m (w2 - w1)} - 1) T) where T is
    the product of the marked-side eigenvector's first component and its
    overlap with the initial state.  A degenerate kernel is a phase times
    the identity, so the amplitude is just that phase to the m-th power
    times a/sqrt(n).
    """
    if m < 0:
        raise InvalidSizeError(f"step count must be >= 0, got {m}")
    a0 = s.a / np.sqrt(s.size)
    if spec.degenerate:
        return complex(spec.eigval1 ** m * a0)
    x_in = s.reduced_vector()
    t = spec.eigvec2[0] * np.vdot(spec.eigvec2, x_in)
    phase1 = np.exp(1j * m * spec.eigphase1)
    return complex(phase1 * (a0 + (np.exp(1j * m * spec.signed_gap) - 1) * t))


def probability_trace(k: ReducedKernel, s: Union[InitialState, np.ndarray],
                      m_max: int) -> EvolutionTrace:
    """P(m) for m = 0..m_max by a single pass over a running state."""
    if m_max < 1:
        raise InvalidSizeError(f"m_max must be >= 1, got {m_max}")
    v = _reduced_input(k, s)
    probs = np.empty(m_max + 1)
    probs[0] = abs(v[0]) ** 2
    for m in range(1, m_max + 1):
        v = k.matrix @ v
        probs[m] = abs(v[0]) ** 2
    return EvolutionTrace.from_probs(probs)


def full_space_trace(cfg: FullSpaceConfig, x_in: np.ndarray,
                     m_max: int) -> EvolutionTrace:
    """P(m) in the full N-dimensional space.

    Each step applies the two reflections as rank-1 updates, O(N) per step,
    so no N x N matrix is ever materialized.
    """
    if m_max < 0:
        raise InvalidSizeError(f"m_max must be >= 0, got {m_max}")
    if cfg.size > MAX_FULL_SIZE:
        raise ResourceLimitError(
            f"full-space trace limited to N <= {MAX_FULL_SIZE}, got {cfg.size}")
    v = as_vector(x_in).copy()
    if v.shape[0] != cfg.size:
        raise InvalidSizeError(f"state has dim {v.shape[0]}, expected {cfg.size}")
    if abs(np.linalg.norm(v) - 1.0) > TOL_EXACT:
        raise NormalizationError("initial state must be unit-norm")
    ph = cfg.phases
    k0 = cfg.k0
    probs = np.empty(m_max + 1)
    probs[0] = abs(v[cfg.marked]) ** 2
    for m in range(1, m_max + 1):
        marked_amp = v[cfg.marked]
        v *= ph.beta
        v[cfg.marked] = ph.alpha * marked_amp
        v = ph.delta * v + ((ph.gamma - ph.delta) * np.vdot(k0, v)) * k0
        probs[m] = abs(v[cfg.marked]) ** 2
    return EvolutionTrace.from_probs(probs)


def perturbed_peak_estimate(s: InitialState) -> float:
    """Predicted asymptotic peak amplitude min(|b|, 1) for a perturbed start.

    Valid when the marked-state coefficient a stays order one; once |a|
    reaches sqrt(n)/2 the state is already concentrated on the marked
    element and the estimate is meaningless, so a warning is issued.
    """
    if abs(s.a) >= np.sqrt(s.size) / 2:
        warnings.warn(
            "initial state is already peaked on the marked element; "
            "measure it directly instead of iterating",
            PeakedInitialStateWarning, stacklevel=2)
    return min(abs(s.b), 1.0)
