"""Array topologies and exact departure phase shifts.

Spacings and radii are in carrier wavelengths, so the wavenumber-spacing
product is ``2*pi*d``.  Element 0 of each dimension is the phase reference.
No mechanical downtilt is modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .errors import ParameterError

__all__ = [
    "AntennaIndexPair",
    "UraGeometry",
    "CylGeometry",
    "zenith_phase",
    "ura_azimuth_phase",
    "cyl_azimuth_phase",
    "most_square_factorization",
    "default_radius",
]

TWO_PI = 2.0 * math.pi


class AntennaIndexPair(NamedTuple):
    """Indices ``(a, a')`` or ``(b, b')`` of one correlation entry."""

    first: int
    second: int

    @property
    def separation(self) -> int:
        return self.first - self.second


def _check_counts(a_count, b_count):
    if a_count < 1 or b_count < 1:
        raise ParameterError(f"element counts must be >= 1, got A={a_count}, B={b_count}")


@dataclass(frozen=True)
class UraGeometry:
    """A x B uniform rectangular array in the y-z plane.

    ``a_count`` elements along z with spacing ``d1``, ``b_count`` along y with
    spacing ``d2``.
    """

    a_count: int
    b_count: int
    d1: float = 0.5
    d2: float = 0.5

    def __post_init__(self):
        _check_counts(self.a_count, self.b_count)
        if not (self.d1 > 0 and self.d2 > 0):
            raise ParameterError(f"spacings must be positive, got d1={self.d1}, d2={self.d2}")

    @property
    def m(self) -> int:
        return self.a_count * self.b_count

    @property
    def k_spacing_unit(self) -> float:
        return TWO_PI

    @property
    def topology(self) -> str:
        return "ura"


def uniform_anchors(b_count: int) -> Tuple[float, ...]:
    return tuple(TWO_PI * b / b_count for b in range(b_count))


def default_radius(b_count: int, chord: float = 0.5) -> float:
    """Ring radius giving adjacent-element chord spacing ``chord`` wavelengths."""
    if b_count < 2:
        return chord
    return chord / (2.0 * math.sin(math.pi / b_count))


@dataclass(frozen=True)
class CylGeometry:
    """A stacked rings of B elements each, at radius ``radius``.

    Rings are ``d1`` apart along z.  ``anchor_angles`` default to the uniform
    placement ``2*pi*b/B``.  Repeated anchors are allowed; all-zero anchors
    with ``radius == d2`` give the URA azimuth factor.
    """

    a_count: int
    b_count: int
    d1: float = 0.5
    radius: Optional[float] = None
    anchor_angles: Tuple[float, ...] = field(default=())

    def __post_init__(self):
        _check_counts(self.a_count, self.b_count)
        if self.radius is None:
            object.__setattr__(self, "radius", default_radius(self.b_count))
        if not self.d1 > 0:
            raise ParameterError(f"d1 must be positive, got {self.d1}")
        if not self.radius > 0:
            raise ParameterError(f"radius must be positive, got {self.radius}")
        anchors = tuple(float(a) for a in self.anchor_angles) or uniform_anchors(self.b_count)
        if len(anchors) != self.b_count:
            raise ParameterError(
                f"anchor_angles has {len(anchors)} entries, expected {self.b_count}"
            )
        if any(not 0.0 <= a < TWO_PI for a in anchors) or any(
            x > y for x, y in zip(anchors, anchors[1:])
        ):
            raise ParameterError("anchor_angles must be non-decreasing in [0, 2*pi)")
        object.__setattr__(self, "anchor_angles", anchors)

    @property
    def m(self) -> int:
        return self.a_count * self.b_count

    @property
    def topology(self) -> str:
        return "cylindrical"


def zenith_phase(a, d1, theta_total):
    """Phase of element ``a`` along z: ``2*pi*d1*a*cos(theta_total)``."""
    return TWO_PI * d1 * np.asarray(a) * np.cos(theta_total)


def ura_azimuth_phase(b, d2, phi_total, theta_total):
    """Phase of element ``b`` along y: ``2*pi*d2*b*cos(phi_total)*sin(theta_total)``."""
    return TWO_PI * d2 * np.asarray(b) * np.cos(phi_total) * np.sin(theta_total)


def cyl_azimuth_phase(b, radius, anchor, phi_total_rel, theta_total):
    """Phase of ring element ``b``.

    ``phi_total_rel`` is the ray azimuth relative to the element anchor,
    ``(phi - anchor) + dphi``.  ``anchor`` is carried for call-site clarity;
    the relative angle already includes it.  With ``radius == d2`` and a zero
    anchor this is identical to :func:`ura_azimuth_phase`.
    """
    del anchor
    return ura_azimuth_phase(b, radius, phi_total_rel, theta_total)


def most_square_factorization(m: int) -> Tuple[int, int]:
    """Split ``m`` into ``(A, B)`` with ``A <= B`` and ``A`` as close to sqrt(m) as possible."""
    if m < 1:
        raise ParameterError(f"M must be >= 1, got {m}")
    a = math.isqrt(m)
    while m % a:
        a -= 1
    return a, m // a
