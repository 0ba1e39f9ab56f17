"""
Angular spread of a cluster
===========================

A cluster leaves the array around a mean direction.  Each ray is offset in
azimuth by a wrapped Gaussian and in zenith by a truncated Laplacian.  Here
we draw offsets, compare histograms with the densities, and look at the
zenith normalisation constant.
"""

import math

import numpy as np

from corrlab import ClusterAngles, kappa, laplacian_pdf, sample_offsets, wrapped_gaussian_pdf

deg = math.pi / 180

# A wide cluster so the shapes are visible in a coarse histogram.
cluster = ClusterAngles.from_sigmas(0.3, 1.2, 20 * deg, 15 * deg)

# Sample and bin the azimuth offsets.
az = sample_offsets(cluster.azimuth, 200_000, seed=1)
counts, edges = np.histogram(az, bins=12, range=(-math.pi, math.pi), density=True)
print("azimuth offset: histogram vs wrapped Gaussian density (bin average)")
for lo, hi, h in zip(edges[:-1], edges[1:], counts):
    grid = np.linspace(lo, hi, 201)
    expected = wrapped_gaussian_pdf(grid, cluster.azimuth).mean()
    print(f"  {0.5 * (lo + hi):+.2f} rad  {h:7.4f}  {expected:7.4f}")

# The zenith draws never leave [-pi, pi).
ze = sample_offsets(cluster.zenith, 200_000, seed=2)
print(f"\nzenith offsets: min {ze.min():+.3f}, max {ze.max():+.3f}, sd {ze.std():.4f} "
      f"(sigma {cluster.zenith.sigma_dtheta:.4f})")
print(f"density at 0: {laplacian_pdf(0.0, cluster.zenith):.4f}")

# kappa only matters for very wide spreads.
for sd_deg in (0.5, 10, 45, 90, 180):
    print(f"kappa(sigma = {sd_deg:5.1f} deg) = {kappa(sd_deg * deg):.12f}")
