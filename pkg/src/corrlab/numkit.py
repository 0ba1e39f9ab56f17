"""Small complex-matrix toolkit used throughout the package.

Matrices are plain 2-D ``numpy`` arrays (complex128 where relevant).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from .errors import NotPSDError, ParameterError, SizeError

__all__ = [
    "EigenDecomposition",
    "EmpiricalCDF",
    "kronecker",
    "hadamard",
    "hermitian_eig",
    "psd_sqrt",
    "empirical_cdf",
    "is_hermitian",
]

MAX_ENTRIES = 2**31
HERMITIAN_TOL = 1e-9


def _as_matrix(m, name="matrix"):
    a = np.asarray(m)
    if a.ndim != 2 or a.size == 0:
        raise SizeError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParameterError(f"{name} has non-finite entries")
    return a


def kronecker(lhs, rhs) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` equals ``lhs[i, j] * rhs``."""
    a = _as_matrix(lhs, "lhs")
    b = _as_matrix(rhs, "rhs")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows * cols > MAX_ENTRIES:
        raise SizeError(f"Kronecker product of size {rows}x{cols} is too large")
    return np.kron(a, b)


def hadamard(lhs, rhs) -> np.ndarray:
    a = _as_matrix(lhs, "lhs")
    b = _as_matrix(rhs, "rhs")
    if a.shape != b.shape:
        raise SizeError(f"Hadamard product needs equal shapes, got {a.shape} and {b.shape}")
    return a * b


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(a))))
    return bool(np.max(np.abs(a - a.conj().T)) <= tol * scale)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order and matching orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(m, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrised as ``(m + m^H) / 2`` first, after checking that it
    is Hermitian to within ``tol`` (relative to its largest entry).
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise SizeError(f"eigendecomposition needs a square matrix, got {a.shape}")
    if not is_hermitian(a, tol):
        raise ParameterError("matrix is not Hermitian within tolerance")
    sym = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(sym)
    return EigenDecomposition(w[::-1].copy(), v[:, ::-1].copy())


def psd_sqrt(m, clip_tol: float = 1e-8) -> np.ndarray:
    """Hermitian PSD square root ``V diag(sqrt(max(lam, 0))) V^H``.

    Eigenvalues in ``[-clip_tol * lam_max, 0)`` are clipped to zero; anything
    more negative raises :class:`NotPSDError`.
    """
    eig = hermitian_eig(m)
    lam = eig.eigenvalues
    lam_max = float(lam[0])
    lam_min = float(lam[-1])
    if lam_min < -clip_tol * max(lam_max, 0.0) or (lam_max <= 0 and lam_min < 0):
        raise NotPSDError(
            f"minimum eigenvalue {lam_min:.3e} is below -{clip_tol:g} * lambda_max "
            f"({lam_max:.3e})",
            min_eigenvalue=lam_min,
            max_eigenvalue=lam_max,
        )
    root = np.sqrt(np.clip(lam, 0.0, None))
    v = eig.eigenvectors
    out = (v * root) @ v.conj().T
    return 0.5 * (out + out.conj().T)


@dataclass(frozen=True)
class EmpiricalCDF:
    """Right-continuous step CDF; ``probabilities[i] = (i + 1) / n``."""

    values: np.ndarray
    probabilities: np.ndarray

    def __iter__(self) -> Iterator[Tuple[float, float]]:
        return zip(self.values.tolist(), self.probabilities.tolist())

    def __len__(self) -> int:
        return len(self.values)

    def points(self):
        return list(self)

    def median(self) -> float:
        """Sample median, averaging the two middle values for even ``n``."""
        return float(np.median(self.values))

    def __call__(self, x):
        """Evaluate ``F(x) = #{samples <= x} / n``."""
        idx = np.searchsorted(self.values, x, side="right")
        return idx / len(self.values)


def empirical_cdf(samples) -> EmpiricalCDF:
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ParameterError("empirical_cdf needs at least one sample")
    if not np.all(np.isfinite(x)):
        raise ParameterError("samples must be finite")
    x = np.sort(x, kind="stable")
    n = x.size
    return EmpiricalCDF(x, np.arange(1, n + 1) / n)
