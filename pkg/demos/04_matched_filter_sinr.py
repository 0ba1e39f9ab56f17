"""
Matched-filter SINR
===================

Expected per-user SINR of conjugate beamforming at 10 dB transmit SNR,
for i.i.d. and correlated channels with M / K = 10.
"""

import math

from corrlab import ClusterAngles, UraGeometry, transmit_correlation
from corrlab.channel import ChannelDims
from corrlab.geometry import most_square_factorization
from corrlab.precoding import SinrScenario, expected_sinr

deg = math.pi / 180
cluster = ClusterAngles.from_sigmas(10**0.7 * deg, 10**0.7 * deg, 10**-0.3 * deg, 10**-0.3 * deg)

print("   M    iid (dB)   correlated (dB)")
for m in (100, 200, 400):
    dims = ChannelDims(m, m // 10)
    corr = transmit_correlation(UraGeometry(*most_square_factorization(m)), cluster)
    iid = expected_sinr(SinrScenario.from_db(10.0, dims), n_trials=200)
    cor = expected_sinr(SinrScenario.from_db(10.0, dims, correlated=True), corr, n_trials=200)
    # a small relative error e is about 4.34 * e in dB
    print(f"{m:4d}   {iid.mean_db:8.2f}   {cor.mean_db:8.2f}  (+/- {cor.stderr / cor.mean * 4.34:.2f})")
