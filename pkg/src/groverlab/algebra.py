"""Dense complex linear algebra primitives.

Vectors and matrices are plain numpy ``complex128`` arrays in row-major
layout; everything in the library stays at desk scale (N up to a few
thousand), so dense storage and O(N^2) transforms are deliberate.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidSizeError, ShapeError

__all__ = [
    "TOL_EXACT",
    "TOL_PIPELINE",
    "dft_matrix",
    "is_unitary",
    "mat_apply",
    "mat_mul",
    "adjoint",
    "outer",
    "as_vector",
    "as_matrix",
]

# Exact single identities hold to TOL_EXACT; quantities composed from
# several matrix products are only promised to TOL_PIPELINE.
TOL_EXACT = 1e-12
TOL_PIPELINE = 1e-10


def as_vector(v) -> np.ndarray:
    """Coerce to a finite 1-D complex array."""
    a = np.asarray(v, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise ShapeError(f"expected a 1-D vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ShapeError("vector has non-finite entries")
    return a


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise ShapeError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ShapeError("matrix has non-finite entries")
    return a


def dft_matrix(n: int) -> np.ndarray:
    """Unitary discrete Fourier transform on ``n`` points.

    Entry (y, x) is exp(+2*pi*i*x*y/n)/sqrt(n); the forward sign convention
    is fixed so that column x holds the momentum state with wavenumber x.
    The inverse transform is the adjoint.
    """
    if n < 1:
        raise InvalidSizeError(f"transform size must be >= 1, got {n}")
    y, x = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * x * y / n) / np.sqrt(n)


def is_unitary(m, tol: float = TOL_EXACT) -> bool:
    """True iff ``m`` is square and max|M^dagger M - I| <= tol."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"unitarity test needs a square matrix, got {a.shape}")
    if tol <= 0:
        raise ShapeError("tolerance must be positive")
    resid = a.conj().T @ a - np.eye(a.shape[0])
    return bool(np.max(np.abs(resid)) <= tol)


def mat_apply(m, v) -> np.ndarray:
    """Matrix-vector product M v."""
    a, b = as_matrix(m), as_vector(v)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot apply {a.shape} to vector of dim {b.shape[0]}")
    return a @ b


def mat_mul(a, b) -> np.ndarray:
    """Matrix product A B."""
    x, y = as_matrix(a), as_matrix(b)
    if x.shape[1] != y.shape[0]:
        raise ShapeError(f"cannot multiply {x.shape} by {y.shape}")
    return x @ y


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(m).conj().T


def outer(u, v) -> np.ndarray:
    """Outer product u v^dagger (so outer(v, v) is the projector onto v)."""
    a, b = as_vector(u), as_vector(v)
    return np.outer(a, b.conj())
