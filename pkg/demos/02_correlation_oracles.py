"""
Closed-form correlation against its oracles
===========================================

The array correlation factors have closed forms.  We check them against
direct numerical integration over the offset densities and against a
Monte-Carlo average of exact array phases.
"""

import math

import numpy as np

from corrlab import ClusterAngles, CylGeometry, UraGeometry
from corrlab.correlation import (
    azimuth_corr_quadrature,
    corr_empirical_mc,
    transmit_correlation,
    ura_azimuth_corr_closed,
    zenith_corr_closed,
    zenith_corr_quadrature,
)

# Narrow cluster: means 10**0.7 deg, offset SDs 10**-0.3 deg.
deg = math.pi / 180
cluster = ClusterAngles.from_sigmas(10**0.7 * deg, 10**0.7 * deg, 10**-0.3 * deg, 10**-0.3 * deg)

print("sep  zenith gap    azimuth gap")
for sep in range(0, 9, 2):
    zg = abs(zenith_corr_closed((sep, 0), 0.5, cluster) - zenith_corr_quadrature((sep, 0), 0.5, cluster))
    ag = abs(ura_azimuth_corr_closed((sep, 0), 0.5, cluster)
             - azimuth_corr_quadrature((sep, 0), 0.5, 0.0, cluster))
    print(f"{sep:3d}  {zg:.3e}     {ag:.3e}")

# Monte-Carlo over a 4 x 4 array.
geom = UraGeometry(4, 4)
mc = corr_empirical_mc(geom, cluster, 10**6, seed=3)
cf = transmit_correlation(geom, cluster)
print(f"\nMC vs closed form, max entry gap: "
      f"zenith {np.abs(mc.r_theta - cf.r_theta).max():.2e}, azimuth {np.abs(mc.r_phi - cf.r_phi).max():.2e}")

# The full transmit correlation of a 10 x 10 array is nearly rank one.
r_t = transmit_correlation(UraGeometry(10, 10), cluster).r_t
lam = np.linalg.eigvalsh(r_t)[::-1]
print(f"\nM = 100 URA: top eigenvalues {np.round(lam[:4], 3)}, min/max {lam[-1] / lam[0]:.1e}")

# The single-anchor cylinder closed form is not a valid correlation matrix.
r_cyl = transmit_correlation(CylGeometry(10, 10), cluster).r_t
lam = np.linalg.eigvalsh(r_cyl)
print(f"M = 100 cylinder (closed form): min/max eigenvalue {lam[0] / lam[-1]:+.3f}")
