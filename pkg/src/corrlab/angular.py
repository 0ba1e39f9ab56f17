"""Angular offset distributions of a propagation cluster.

The azimuth offset of a ray around the cluster mean follows a wrapped
Gaussian and the zenith offset a Laplacian truncated to [-pi, pi).  Both
densities are supported on [-pi, pi) only and vanish elsewhere.  All angles
are in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ParameterError

__all__ = [
    "AzimuthWrappedGaussian",
    "ZenithLaplacian",
    "ClusterAngles",
    "kappa",
    "wrapped_gaussian_pdf",
    "laplacian_pdf",
    "sample_offsets",
    "as_generator",
]

SQRT2 = math.sqrt(2.0)


def _check_sigma(sigma, name):
    if not (math.isfinite(sigma) and sigma > 0):
        raise ParameterError(f"{name} must be positive and finite, got {sigma!r}")


def kappa(sigma_dtheta: float) -> float:
    """Normalisation constant of the truncated zenith Laplacian.

    ``1 / (1 - exp(-sqrt(2) * pi / sigma_dtheta))``; always >= 1.
    """
    if not sigma_dtheta > 0:
        raise ParameterError(f"sigma_dtheta must be positive, got {sigma_dtheta!r}")
    return 1.0 / -math.expm1(-SQRT2 * math.pi / sigma_dtheta)


@dataclass(frozen=True)
class AzimuthWrappedGaussian:
    """Wrapped Gaussian for the azimuth offset.

    Parameters
    ----------
    sigma_dphi : float
        Standard deviation of the underlying Gaussian (rad).
    n_wrap : int
        The wrap series is truncated to ``i in [-n_wrap, n_wrap]``.
    """

    sigma_dphi: float
    n_wrap: int = 10

    def __post_init__(self):
        _check_sigma(self.sigma_dphi, "sigma_dphi")
        if self.n_wrap < 0:
            raise ParameterError(f"n_wrap must be >= 0, got {self.n_wrap}")

    @property
    def sigma(self) -> float:
        return self.sigma_dphi


@dataclass(frozen=True)
class ZenithLaplacian:
    """Laplacian for the zenith offset, truncated to [-pi, pi).

    ``kappa`` is derived from ``sigma_dtheta`` and stored on construction.
    """

    sigma_dtheta: float
    kappa: float = field(init=False)

    def __post_init__(self):
        _check_sigma(self.sigma_dtheta, "sigma_dtheta")
        object.__setattr__(self, "kappa", kappa(self.sigma_dtheta))

    @property
    def sigma(self) -> float:
        return self.sigma_dtheta

    @property
    def rate(self) -> float:
        """Decay rate ``sqrt(2) / sigma`` of the exponential."""
        return SQRT2 / self.sigma_dtheta


@dataclass(frozen=True)
class ClusterAngles:
    """Mean departure angles of a cluster and its offset distributions.

    ``theta_mean`` is the zenith angle measured from the z axis, in (0, pi);
    ``phi_mean`` is the azimuth in [-pi, pi).  The azimuth and zenith offsets
    are independent.
    """

    phi_mean: float
    theta_mean: float
    azimuth: AzimuthWrappedGaussian
    zenith: ZenithLaplacian

    def __post_init__(self):
        if not 0.0 < self.theta_mean < math.pi:
            raise ParameterError(f"theta_mean must lie in (0, pi), got {self.theta_mean!r}")
        if not -math.pi <= self.phi_mean < math.pi:
            raise ParameterError(f"phi_mean must lie in [-pi, pi), got {self.phi_mean!r}")

    @classmethod
    def from_sigmas(cls, phi_mean, theta_mean, sigma_dphi, sigma_dtheta, n_wrap=10):
        return cls(
            phi_mean,
            theta_mean,
            AzimuthWrappedGaussian(sigma_dphi, n_wrap),
            ZenithLaplacian(sigma_dtheta),
        )

    def with_phi(self, phi_mean: float) -> "ClusterAngles":
        """Copy with a different mean azimuth, wrapped into [-pi, pi)."""
        phi = (phi_mean + math.pi) % (2 * math.pi) - math.pi
        return ClusterAngles(phi, self.theta_mean, self.azimuth, self.zenith)


def _as_offsets(offset):
    x = np.asarray(offset, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ParameterError("offset must be finite")
    return x


def _in_support(x):
    return (x >= -np.pi) & (x < np.pi)


def wrapped_gaussian_pdf(offset, dist: AzimuthWrappedGaussian):
    """Wrapped Gaussian density at ``offset``; zero outside [-pi, pi).

    Accepts scalars or arrays and returns the same shape.
    """
    x = _as_offsets(offset)
    s = dist.sigma_dphi
    shifts = 2 * np.pi * np.arange(-dist.n_wrap, dist.n_wrap + 1)
    terms = np.exp(-((x[..., None] + shifts) ** 2) / (2 * s * s))
    val = terms.sum(axis=-1) / (s * math.sqrt(2 * math.pi))
    val = np.where(_in_support(x), val, 0.0)
    return float(val) if val.ndim == 0 else val


def laplacian_pdf(offset, dist: ZenithLaplacian):
    """Truncated Laplacian density at ``offset``; zero outside [-pi, pi)."""
    x = _as_offsets(offset)
    s = dist.sigma_dtheta
    val = dist.kappa / (SQRT2 * s) * np.exp(-np.abs(SQRT2 * x / s))
    val = np.where(_in_support(x), val, 0.0)
    return float(val) if val.ndim == 0 else val


def as_generator(seed) -> np.random.Generator:
    """Normalise an int, ``SeedSequence`` or ``Generator`` into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def wrap_angle(x):
    """Map angles into [-pi, pi)."""
    return np.mod(np.asarray(x) + np.pi, 2 * np.pi) - np.pi


def sample_offsets(
    dist: Union[AzimuthWrappedGaussian, ZenithLaplacian],
    n: int,
    seed=None,
) -> np.ndarray:
    """Draw ``n`` i.i.d. offsets (rad) from ``dist``.

    The wrapped Gaussian is sampled by wrapping a Gaussian draw into
    [-pi, pi).  The Laplacian is sampled by inverting the CDF of the density
    truncated to [-pi, pi), so draws never leave the support.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    rng = as_generator(seed)
    if isinstance(dist, AzimuthWrappedGaussian):
        return wrap_angle(rng.normal(0.0, dist.sigma_dphi, size=n))
    if isinstance(dist, ZenithLaplacian):
        lam = dist.rate
        u = rng.random(n)
        sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        # |x| on [0, pi] with density proportional to exp(-lam |x|)
        mag = -np.log1p(u * np.expm1(-lam * np.pi)) / lam
        return sign * np.minimum(mag, np.nextafter(np.pi, 0.0))
    raise ParameterError(f"unsupported distribution {type(dist).__name__}")
