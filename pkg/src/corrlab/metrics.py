"""Convergence metrics of the normalised Gram matrix ``W = H^T H^* / M``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numkit import hermitian_eig

__all__ = ["GramStats", "gram", "lambda_range", "mad", "diagonal_dominance", "INF"]

INF = math.inf


def gram(h, m_antennas=None) -> np.ndarray:
    """``(1/M) H^T H^*`` for an M x K channel ``h``."""
    h = np.asarray(h)
    m = h.shape[0] if m_antennas is None else m_antennas
    w = h.T @ h.conj() / m
    return 0.5 * (w + w.conj().T)


def lambda_range(w) -> float:
    """``lambda_max(W) - lambda_min(W)``."""
    lam = hermitian_eig(w).eigenvalues
    return float(lam[0] - lam[-1])


def mad(e) -> float:
    """Mean absolute deviation ``sum |E_ij| / K^2`` using the complex modulus."""
    e = np.asarray(e)
    return float(np.abs(e).sum() / e.shape[0] ** 2)


def diagonal_dominance(w) -> float:
    """``sum_i W_ii / sum_{i != j} |W_ij|``; ``math.inf`` when the off-diagonal mass is 0."""
    w = np.asarray(w)
    diag = float(np.real(np.trace(w)))
    off = float(np.abs(w).sum() - np.abs(np.diag(w)).sum())
    if off <= 0.0:
        return INF
    return diag / off


@dataclass(frozen=True)
class GramStats:
    w: np.ndarray
    e: np.ndarray
    lambda_range: float
    mad: float
    diag_dominance: float

    @classmethod
    def from_channel(cls, h, m_antennas=None) -> "GramStats":
        w = gram(h, m_antennas)
        e = w - np.eye(w.shape[0])
        return cls(w, e, lambda_range(w), mad(e), diagonal_dominance(w))
