"""Matched-filter downlink SINR."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import ChannelDims, iid_channel, trial_seed
from .correlation import CorrelationSet
from .errors import ParameterError
from .numkit import psd_sqrt

__all__ = [
    "SinrScenario",
    "SinrEstimate",
    "mf_sinr_per_user",
    "expected_sinr",
    "db_to_linear",
    "linear_to_db",
]


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x) -> float:
    return 10.0 * math.log10(x)


def mf_sinr_per_user(h, rho_d: float) -> np.ndarray:
    """Per-user MF SINR for channel ``h`` (M x K) at transmit SNR ``rho_d`` (linear).

    With ``G = H^T H^*`` and ``gamma = tr(G) / K``::

        SINR_i = c |G_ii|^2 / (1 + c sum_{j != i} G_ij G_ji),  c = rho_d / (K gamma)
    """
    h = np.asarray(h)
    k = h.shape[1]
    g = h.T @ h.conj()
    gamma = float(np.real(np.trace(g))) / k
    if not gamma > 0:
        raise ParameterError("channel matrix is identically zero")
    c = rho_d / (k * gamma)
    diag = np.real(np.diag(g))
    interference = (np.abs(g) ** 2).sum(axis=1) - diag**2
    return c * diag**2 / (1.0 + c * interference)


@dataclass(frozen=True)
class SinrScenario:
    rho_d: float
    dims: ChannelDims
    correlated: bool = False

    def __post_init__(self):
        if not self.rho_d > 0:
            raise ParameterError(f"rho_d must be positive, got {self.rho_d}")

    @classmethod
    def from_db(cls, rho_d_db: float, dims: ChannelDims, correlated: bool = False):
        return cls(db_to_linear(rho_d_db), dims, correlated)


@dataclass(frozen=True)
class SinrEstimate:
    mean: float
    stderr: float
    n_trials: int

    @property
    def mean_db(self) -> float:
        return linear_to_db(self.mean)


def expected_sinr(
    scenario: SinrScenario,
    corr: Optional[CorrelationSet] = None,
    n_trials: int = 500,
    seed: int = 0,
) -> SinrEstimate:
    """Monte-Carlo mean of the per-user SINR over users and trials.

    Trial ``t`` draws its channel from ``trial_seed(seed, M, K, t)``, the
    same stream the experiment harness uses.  The standard
    error is computed from the per-trial user averages.
    """
    if n_trials < 100:
        raise ParameterError(f"n_trials must be >= 100, got {n_trials}")
    root = None
    if scenario.correlated:
        if corr is None:
            raise ParameterError("correlated scenario needs a CorrelationSet")
        root = psd_sqrt(corr.r_t)
    per_trial = np.empty(n_trials)
    for t in range(n_trials):
        dims = scenario.dims
        h = iid_channel(dims, trial_seed(seed, dims.m_antennas, dims.k_users, t))
        if root is not None:
            h = root @ h
        per_trial[t] = mf_sinr_per_user(h, scenario.rho_d).mean()
    return SinrEstimate(
        float(per_trial.mean()), float(per_trial.std(ddof=1) / math.sqrt(n_trials)), n_trials
    )
