"""Spatial correlation of URA and cylindrical arrays for massive MIMO.

Closed-form transmit correlation, quadrature and Monte-Carlo oracles,
correlated channel synthesis, convergence metrics and matched-filter SINR.
"""

from .angular import (
    AzimuthWrappedGaussian,
    ClusterAngles,
    ZenithLaplacian,
    kappa,
    laplacian_pdf,
    sample_offsets,
    wrapped_gaussian_pdf,
)
from .channel import ChannelDims, ChannelRealization, correlated_channel, iid_channel
from .correlation import (
    ClosedFormConfig,
    CorrelationSet,
    assemble,
    transmit_correlation,
    xpol_matrix,
)
from .errors import (
    ConfigError,
    CorrlabError,
    NotPSDError,
    ParameterError,
    QuadratureError,
    SizeError,
)
from .geometry import CylGeometry, UraGeometry
from .metrics import GramStats, diagonal_dominance, gram, lambda_range, mad
from .precoding import SinrScenario, expected_sinr, mf_sinr_per_user

__version__ = "0.1.0"

__all__ = [
    "AzimuthWrappedGaussian",
    "ChannelDims",
    "ChannelRealization",
    "ClosedFormConfig",
    "ClusterAngles",
    "ConfigError",
    "CorrelationSet",
    "CorrlabError",
    "CylGeometry",
    "GramStats",
    "NotPSDError",
    "ParameterError",
    "QuadratureError",
    "SinrScenario",
    "SizeError",
    "UraGeometry",
    "ZenithLaplacian",
    "assemble",
    "correlated_channel",
    "diagonal_dominance",
    "expected_sinr",
    "gram",
    "iid_channel",
    "kappa",
    "lambda_range",
    "laplacian_pdf",
    "mad",
    "mf_sinr_per_user",
    "sample_offsets",
    "transmit_correlation",
    "wrapped_gaussian_pdf",
    "xpol_matrix",
]
