"""Transmit spatial correlation for URA and cylindrical arrays.

Three engines build the zenith factor ``R_theta`` (A x A) and the azimuth
factor ``R_phi`` (B x B):

* ``closed_form`` -- small-angle approximations.  The zenith entry is the
  Laplacian characteristic function at the linearised phase frequency.  The
  azimuth entry linearises both ``cos(phi + dphi)`` and ``sin(theta + dtheta)``,
  integrates the Gaussian azimuth offset analytically and then integrates the
  resulting Gaussian-times-exponential in ``dtheta`` over each sign branch of
  the Laplacian separately.
* ``quadrature`` -- adaptive quadrature of the defining integrals with the
  exact phases, no Taylor step.
* ``monte_carlo`` -- sample averages of exact per-element phase vectors.

The full matrix is ``R_t = X_pol o (R_phi kron R_theta)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np
from scipy import integrate, special

from .angular import ClusterAngles, as_generator, sample_offsets
from .errors import ParameterError, QuadratureError, SizeError
from .geometry import TWO_PI, CylGeometry, UraGeometry
from .numkit import hadamard, is_hermitian, kronecker

__all__ = [
    "AzimuthSummandParams",
    "ClosedFormConfig",
    "CorrelationFactors",
    "CorrelationSet",
    "azimuth_summand_params",
    "zenith_corr_closed",
    "ura_azimuth_corr_closed",
    "cyl_azimuth_corr_closed",
    "zenith_corr_quadrature",
    "azimuth_corr_quadrature",
    "zenith_matrix",
    "azimuth_matrix",
    "corr_empirical_mc",
    "xpol_matrix",
    "assemble",
    "transmit_correlation",
    "ENGINES",
]

ENGINES = ("closed_form", "quadrature", "monte_carlo")
BRANCH_MODES = ("sum_branches", "positive_only")

Geometry = Union[UraGeometry, CylGeometry]


@dataclass(frozen=True)
class ClosedFormConfig:
    """Options for the azimuth closed form.

    ``branch_mode='sum_branches'`` integrates both half-lines of the zenith
    Laplacian (``dtheta >= 0`` and ``dtheta < 0``) and adds them.
    ``'positive_only'`` keeps the ``dtheta >= 0`` half-line alone; it exists
    to show that a single branch is not a correlation coefficient.
    """

    branch_mode: str = "sum_branches"

    def __post_init__(self):
        if self.branch_mode not in BRANCH_MODES:
            raise ParameterError(
                f"branch_mode must be one of {BRANCH_MODES}, got {self.branch_mode!r}"
            )


DEFAULT_CFG = ClosedFormConfig()


class CorrelationFactors(NamedTuple):
    r_theta: np.ndarray
    r_phi: np.ndarray


@dataclass(frozen=True)
class CorrelationSet:
    """Zenith and azimuth factors, co-pol matrix, x-pol overlay and ``R_t``."""

    r_theta: np.ndarray
    r_phi: np.ndarray
    r_copol: np.ndarray
    xpol: np.ndarray
    r_t: np.ndarray
    delta: float

    @property
    def m(self) -> int:
        return self.r_t.shape[0]


def _pair(pair):
    first, second = pair
    return int(first), int(second)


# ---------------------------------------------------------------- zenith


def _zenith_closed(sep, d1, cluster: ClusterAngles):
    sep = np.asarray(sep, dtype=float)
    w = TWO_PI * d1 * sep
    th = cluster.theta_mean
    s = cluster.zenith.sigma_dtheta
    return cluster.zenith.kappa * np.exp(1j * w * math.cos(th)) / (
        1.0 + 0.5 * s * s * (w * math.sin(th)) ** 2
    )


def zenith_corr_closed(pair, d1: float, cluster: ClusterAngles) -> complex:
    """Closed-form zenith correlation between elements ``a`` and ``a'``.

    ``kappa * exp(j w cos(theta)) / (1 + sigma^2/2 * (w sin(theta))^2)`` with
    ``w = 2*pi*d1*(a - a')``.  The diagonal value is ``kappa`` (1 up to
    rounding for sub-degree spreads).
    """
    a, ap = _pair(pair)
    return complex(_zenith_closed(a - ap, d1, cluster))


# ---------------------------------------------------------------- azimuth


@dataclass(frozen=True)
class AzimuthSummandParams:
    """Coefficients of the ``dtheta`` integral left after the ``dphi`` step.

    After integrating the Gaussian azimuth offset, the integrand in ``dtheta``
    is ``exp(c_term*dtheta - quad_coeff*dtheta**2) * laplacian(dtheta)``
    times ``prefactor``.  Folding the Laplacian exponent into the linear
    coefficient gives ``omega_pos = c_term - sqrt(2)/sigma`` on
    ``dtheta >= 0`` and ``omega_neg = c_term + sqrt(2)/sigma`` on
    ``dtheta < 0``.
    """

    c_term: complex
    quad_coeff: float
    omega_pos: complex
    omega_neg: complex
    prefactor: complex


def _azimuth_terms(sep, spacing, phi, cluster: ClusterAngles):
    beta = TWO_PI * spacing * np.asarray(sep, dtype=float)
    th = cluster.theta_mean
    sin_t, cos_t = math.sin(th), math.cos(th)
    sin_p, cos_p = np.sin(phi), np.cos(phi)
    sp = cluster.azimuth.sigma_dphi
    rate = cluster.zenith.rate
    prefactor = np.exp(1j * beta * sin_t * cos_p) * np.exp(
        -0.5 * (sp * beta * sin_t * sin_p) ** 2
    )
    c_term = 1j * beta * cos_t * (cos_p + 1j * sp * sp * beta * sin_p**2 * sin_t)
    quad = 0.5 * (sp * beta * cos_t * sin_p) ** 2
    return c_term, quad, c_term - rate, c_term + rate, prefactor


def azimuth_summand_params(sep: int, spacing: float, phi: float, cluster: ClusterAngles):
    """Branch coefficients for separation ``sep`` at mean azimuth ``phi``."""
    c, q, wp, wn, pre = _azimuth_terms(sep, spacing, phi, cluster)
    return AzimuthSummandParams(complex(c), float(q), complex(wp), complex(wn), complex(pre))


def _half_line(c, q):
    """``int_0^inf exp(-c x - q x^2) dx`` for ``Re c > 0`` or ``q > 0``.

    Uses the scaled complementary error function so that the ``q -> 0`` limit
    ``1/c`` is approached without cancellation.
    """
    c = np.asarray(c, dtype=complex)
    q = np.asarray(q, dtype=float)
    c, q = np.broadcast_arrays(c, q)
    out = np.empty(c.shape, dtype=complex)
    flat = q == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.sqrt(q)
        z = c / (2.0 * np.where(flat, 1.0, root))
        far = ~flat & (np.abs(z) > 1e7)
        near = ~flat & ~far
        out[flat] = 1.0 / c[flat]
        cf = c[far]
        out[far] = (1.0 - 2.0 * q[far] / cf**2) / cf
        out[near] = 0.5 * np.sqrt(np.pi / q[near]) * special.erfcx(z[near])
    return out


def _azimuth_closed(sep, spacing, phi, cluster: ClusterAngles, cfg: ClosedFormConfig):
    c, q, w_pos, w_neg, pre = _azimuth_terms(sep, spacing, phi, cluster)
    # dtheta >= 0: exp(w_pos x - q x^2); dtheta < 0 mirrored onto x > 0: exp(-w_neg x - q x^2)
    total = _half_line(-w_pos, q)
    if cfg.branch_mode == "sum_branches":
        total = total + _half_line(w_neg, q)
    scale = cluster.zenith.kappa / (math.sqrt(2.0) * cluster.zenith.sigma_dtheta)
    return scale * pre * total


def ura_azimuth_corr_closed(
    pair, d2: float, cluster: ClusterAngles, cfg: Optional[ClosedFormConfig] = None
) -> complex:
    """Closed-form URA azimuth correlation between elements ``b`` and ``b'``."""
    b, bp = _pair(pair)
    return complex(_azimuth_closed(b - bp, d2, cluster.phi_mean, cluster, cfg or DEFAULT_CFG))


def cyl_azimuth_corr_closed(
    pair, geom: CylGeometry, cluster: ClusterAngles, cfg: Optional[ClosedFormConfig] = None
) -> complex:
    """Closed-form cylindrical azimuth correlation.

    Same expression as the URA case with ``d2 -> radius`` and the mean
    azimuth taken relative to the anchor of the first element of the pair.
    """
    b, bp = _pair(pair)
    phi_rel = cluster.phi_mean - geom.anchor_angles[b]
    return complex(_azimuth_closed(b - bp, geom.radius, phi_rel, cluster, cfg or DEFAULT_CFG))


# ---------------------------------------------------------------- quadrature


def _breakpoints(*sigmas):
    pts = {0.0}
    for s in sigmas:
        for k in (1.0, 3.0, 10.0, 30.0, 100.0):
            if k * s < math.pi:
                pts.update((k * s, -k * s))
    return sorted(pts)


def _quad(f, points, tol, what):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        res = integrate.quad(
            f, -math.pi, math.pi, points=points, epsabs=tol, epsrel=0.0, limit=500, full_output=1
        )
    if len(res) > 3:
        raise QuadratureError(f"{what} quadrature did not converge: {res[3]}")
    return res[0]


def _laplacian_scalar(cluster: ClusterAngles):
    s = cluster.zenith.sigma_dtheta
    norm = cluster.zenith.kappa / (math.sqrt(2.0) * s)
    rate = cluster.zenith.rate
    return lambda x: norm * math.exp(-rate * abs(x))


def _wrapped_gaussian_scalar(cluster: ClusterAngles):
    s = cluster.azimuth.sigma_dphi
    n = cluster.azimuth.n_wrap
    shifts = [TWO_PI * i for i in range(-n, n + 1)]
    norm = 1.0 / (s * math.sqrt(2.0 * math.pi))
    two_var = 2.0 * s * s
    exp = math.exp
    return lambda x: norm * sum([exp(-((x + h) ** 2) / two_var) for h in shifts])


def zenith_corr_quadrature(pair, d1: float, cluster: ClusterAngles, tol: float = 1e-10) -> complex:
    """Zenith correlation by adaptive quadrature of the defining integral.

    Integrates ``exp(j*2*pi*d1*(a - a')*cos(theta + dtheta))`` against the
    truncated Laplacian over [-pi, pi) to absolute tolerance ``tol``.
    """
    if not tol > 0:
        raise ParameterError("tol must be positive")
    a, ap = _pair(pair)
    w = TWO_PI * d1 * (a - ap)
    th = cluster.theta_mean
    pdf = _laplacian_scalar(cluster)
    pts = _breakpoints(cluster.zenith.sigma_dtheta)
    re = _quad(lambda t: math.cos(w * math.cos(th + t)) * pdf(t), pts, tol / 2, "zenith")
    im = _quad(lambda t: math.sin(w * math.cos(th + t)) * pdf(t), pts, tol / 2, "zenith")
    return complex(re, im)


def azimuth_corr_quadrature(
    pair,
    spacing: float,
    anchor: float,
    cluster: ClusterAngles,
    tol: float = 1e-10,
    anchor_second: Optional[float] = None,
) -> complex:
    """Azimuth correlation by nested adaptive quadrature over ``(dphi, dtheta)``.

    The phase of element ``b`` is
    ``2*pi*spacing*b*cos(phi - anchor_b + dphi)*sin(theta + dtheta)``.  With
    ``anchor_second=None`` both elements share ``anchor`` (URA: 0), so only
    ``b - b'`` matters.  The integrand is weighted by the product of the
    wrapped Gaussian and truncated Laplacian densities on [-pi, pi)^2.
    """
    if not tol > 0:
        raise ParameterError("tol must be positive")
    b, bp = _pair(pair)
    if anchor_second is None:
        anchor_second = anchor
    kb = TWO_PI * spacing * b
    kbp = TWO_PI * spacing * bp
    th = cluster.theta_mean
    p1 = cluster.phi_mean - anchor
    p2 = cluster.phi_mean - anchor_second
    p_th = _laplacian_scalar(cluster)
    p_ph = _wrapped_gaussian_scalar(cluster)
    pts_ph = _breakpoints(cluster.azimuth.sigma_dphi)
    pts_th = _breakpoints(cluster.zenith.sigma_dtheta)
    inner_tol = tol / 4
    cos, sin = math.cos, math.sin

    def inner(t):
        st = sin(th + t)

        def phase(x):
            return (kb * cos(p1 + x) - kbp * cos(p2 + x)) * st

        re = _quad(lambda x: cos(phase(x)) * p_ph(x), pts_ph, inner_tol, "azimuth (inner)")
        im = _quad(lambda x: sin(phase(x)) * p_ph(x), pts_ph, inner_tol, "azimuth (inner)")
        return re, im

    re = _quad(lambda t: inner(t)[0] * p_th(t), pts_th, tol / 4, "azimuth")
    im = _quad(lambda t: inner(t)[1] * p_th(t), pts_th, tol / 4, "azimuth")
    return complex(re, im)


# ---------------------------------------------------------------- matrices


def _toeplitz_hermitian(values):
    """Hermitian Toeplitz matrix with ``R[i, j] = values[i - j]`` for ``i >= j``."""
    n = len(values)
    idx = np.subtract.outer(np.arange(n), np.arange(n))
    vals = np.asarray(values, dtype=complex)
    out = vals[np.abs(idx)]
    return np.where(idx >= 0, out, out.conj())


def zenith_matrix(a_count: int, d1: float, cluster: ClusterAngles, engine="closed_form", tol=1e-10):
    """A x A zenith factor (shared by URA and cylinder) from the closed form or quadrature."""
    seps = np.arange(a_count)
    if engine == "closed_form":
        vals = _zenith_closed(seps, d1, cluster)
    elif engine == "quadrature":
        vals = [zenith_corr_quadrature((s, 0), d1, cluster, tol) for s in seps]
    else:
        raise ParameterError(f"unknown engine {engine!r}")
    return _toeplitz_hermitian(vals)


def azimuth_matrix(
    geom: Geometry,
    cluster: ClusterAngles,
    engine="closed_form",
    cfg: Optional[ClosedFormConfig] = None,
    tol=1e-10,
):
    """B x B azimuth factor.

    For the URA the factor is Toeplitz in ``b - b'``.  For the cylinder the
    entry for ``b <= b'`` uses the anchor of element ``b`` and the lower
    triangle is its conjugate, so the result is Hermitian.
    """
    cfg = cfg or DEFAULT_CFG
    n = geom.b_count
    if isinstance(geom, UraGeometry):
        seps = np.arange(n)
        if engine == "closed_form":
            vals = _azimuth_closed(seps, geom.d2, cluster.phi_mean, cluster, cfg)
        elif engine == "quadrature":
            vals = [azimuth_corr_quadrature((s, 0), geom.d2, 0.0, cluster, tol) for s in seps]
        else:
            raise ParameterError(f"unknown engine {engine!r}")
        return _toeplitz_hermitian(vals)
    if isinstance(geom, CylGeometry):
        out = np.eye(n, dtype=complex)
        rows, cols = np.triu_indices(n, k=1)
        if engine == "closed_form":
            anchors = np.asarray(geom.anchor_angles)
            phi_rel = cluster.phi_mean - anchors[rows]
            vals = _azimuth_closed(rows - cols, geom.radius, phi_rel, cluster, cfg)
            diag = _azimuth_closed(0, geom.radius, cluster.phi_mean, cluster, cfg)
            out[np.diag_indices(n)] = diag
        elif engine == "quadrature":
            vals = np.array(
                [
                    azimuth_corr_quadrature((b, bp), geom.radius, geom.anchor_angles[b], cluster, tol)
                    for b, bp in zip(rows, cols)
                ]
            )
        else:
            raise ParameterError(f"unknown engine {engine!r}")
        out[rows, cols] = vals
        out[cols, rows] = np.conj(vals)
        return out
    raise ParameterError(f"unsupported geometry {type(geom).__name__}")


def corr_empirical_mc(
    geom: Geometry, cluster: ClusterAngles, n_draws: int = 10**6, seed=None, chunk: int = 1 << 16
) -> CorrelationFactors:
    """Sample-average zenith and azimuth factors from exact element phases.

    Each draw of ``(dphi, dtheta)`` yields per-element phase vectors; the
    factors are the averages of their outer products.  The cylinder uses the
    individual anchor of every element.
    """
    if n_draws < 10**4:
        raise ParameterError(f"n_draws must be >= 1e4, got {n_draws}")
    rng = as_generator(seed)
    a_idx = np.arange(geom.a_count)
    b_idx = np.arange(geom.b_count)
    th, ph = cluster.theta_mean, cluster.phi_mean
    if isinstance(geom, UraGeometry):
        kb = TWO_PI * geom.d2 * b_idx
        rel = np.zeros(geom.b_count)
    elif isinstance(geom, CylGeometry):
        kb = TWO_PI * geom.radius * b_idx
        rel = np.asarray(geom.anchor_angles)
    else:
        raise ParameterError(f"unsupported geometry {type(geom).__name__}")
    ka = TWO_PI * geom.d1 * a_idx
    acc_t = np.zeros((geom.a_count, geom.a_count), dtype=complex)
    acc_p = np.zeros((geom.b_count, geom.b_count), dtype=complex)
    done = 0
    while done < n_draws:
        n = min(chunk, n_draws - done)
        dphi = sample_offsets(cluster.azimuth, n, rng)
        dth = sample_offsets(cluster.zenith, n, rng)
        v_t = np.exp(1j * np.outer(np.cos(th + dth), ka))
        acc_t += v_t.T @ v_t.conj()
        v_p = np.exp(1j * kb * np.cos(ph - rel + dphi[:, None]) * np.sin(th + dth)[:, None])
        acc_p += v_p.T @ v_p.conj()
        done += n
    r_theta = acc_t / n_draws
    r_phi = acc_p / n_draws
    return CorrelationFactors(0.5 * (r_theta + r_theta.conj().T), 0.5 * (r_phi + r_phi.conj().T))


# ---------------------------------------------------------------- assembly


def xpol_matrix(m_dim: int, delta: float) -> np.ndarray:
    """``ones(M/2, M/2) kron [[1, sqrt(delta)], [sqrt(delta), 1]]``."""
    if m_dim < 2 or m_dim % 2:
        raise ParameterError(f"x-pol overlay needs an even M >= 2, got {m_dim}")
    if not 0.0 <= delta <= 1.0:
        raise ParameterError(f"delta must lie in [0, 1], got {delta}")
    r = math.sqrt(delta)
    return np.kron(np.ones((m_dim // 2, m_dim // 2)), np.array([[1.0, r], [r, 1.0]]))


def assemble(r_phi, r_theta, delta: float) -> CorrelationSet:
    """``R = R_phi kron R_theta`` and ``R_t = X_pol o R``."""
    r_phi = np.asarray(r_phi, dtype=complex)
    r_theta = np.asarray(r_theta, dtype=complex)
    for name, mat in (("r_phi", r_phi), ("r_theta", r_theta)):
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise SizeError(f"{name} must be square, got shape {mat.shape}")
        if not is_hermitian(mat):
            raise ParameterError(f"{name} is not Hermitian")
    r_copol = kronecker(r_phi, r_theta)
    xpol = xpol_matrix(r_copol.shape[0], delta)
    r_t = hadamard(xpol, r_copol)
    return CorrelationSet(r_theta, r_phi, r_copol, xpol, r_t, float(delta))


def transmit_correlation(
    geom: Geometry,
    cluster: ClusterAngles,
    engine: str = "closed_form",
    delta: float = 0.01,
    cfg: Optional[ClosedFormConfig] = None,
    tol: float = 1e-10,
    n_draws: int = 10**6,
    seed=None,
) -> CorrelationSet:
    """Build the full :class:`CorrelationSet` for ``geom`` with the chosen engine."""
    if engine == "monte_carlo":
        r_theta, r_phi = corr_empirical_mc(geom, cluster, n_draws, seed)
    elif engine in ("closed_form", "quadrature"):
        r_theta = zenith_matrix(geom.a_count, geom.d1, cluster, engine, tol)
        r_phi = azimuth_matrix(geom, cluster, engine, cfg, tol)
    else:
        raise ParameterError(f"engine must be one of {ENGINES}, got {engine!r}")
    return assemble(r_phi, r_theta, delta)
