"""Downlink channel synthesis, ``H = R_t^{1/2} H_iid``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .angular import as_generator
from .errors import ParameterError, SizeError
from .numkit import psd_sqrt

__all__ = [
    "ChannelDims",
    "ChannelRealization",
    "iid_channel",
    "correlated_channel",
    "realize",
    "trial_seed",
]


@dataclass(frozen=True)
class ChannelDims:
    """``M`` transmit antennas serving ``K`` single-antenna users."""

    m_antennas: int
    k_users: int

    def __post_init__(self):
        if not (self.k_users >= 1 and self.m_antennas >= self.k_users):
            raise ParameterError(
                f"need M >= K >= 1, got M={self.m_antennas}, K={self.k_users}"
            )

    @property
    def ratio(self) -> float:
        """Antenna-to-user ratio ``alpha = M / K``."""
        return self.m_antennas / self.k_users


@dataclass(frozen=True)
class ChannelRealization:
    h_iid: np.ndarray
    h: np.ndarray
    seed: Optional[int] = None


def trial_seed(master: int, *keys: int) -> np.random.SeedSequence:
    """Seed for one trial, derived only from the master seed and integer keys.

    Typical keys are ``(M, K, trial)``; the result does not depend on the
    order in which trials are executed.
    """
    return np.random.SeedSequence([int(master), *(int(k) for k in keys)])


def iid_channel(dims: ChannelDims, seed=None) -> np.ndarray:
    """M x K matrix of CN(0, 1) entries (variance 1/2 per real component)."""
    rng = as_generator(seed)
    shape = (dims.m_antennas, dims.k_users)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * np.sqrt(0.5)


def correlated_channel(r_t, h_iid, clip_tol: float = 1e-8, r_t_sqrt=None) -> np.ndarray:
    """Apply the transmit correlation: ``psd_sqrt(r_t) @ h_iid``.

    A precomputed square root can be passed as ``r_t_sqrt`` to avoid repeating
    the eigendecomposition across trials; ``r_t`` is then ignored.
    """
    root = r_t_sqrt if r_t_sqrt is not None else psd_sqrt(r_t, clip_tol)
    h_iid = np.asarray(h_iid)
    if root.shape[1] != h_iid.shape[0]:
        raise SizeError(f"R_t is {root.shape}, H_iid is {h_iid.shape}")
    return root @ h_iid


def realize(dims: ChannelDims, seed=None, r_t_sqrt=None) -> ChannelRealization:
    """One realization; i.i.d. when ``r_t_sqrt`` is None."""
    h_iid = iid_channel(dims, seed)
    h = h_iid if r_t_sqrt is None else correlated_channel(None, h_iid, r_t_sqrt=r_t_sqrt)
    return ChannelRealization(h_iid, h, seed if isinstance(seed, int) else None)
