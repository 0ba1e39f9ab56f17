"""
Favourable propagation metrics
==============================

With many more antennas than users, the normalised Gram matrix
W = H^T H^* / M of an i.i.d. channel tends to the identity.  Narrow-spread
spatial correlation breaks this.  We compare the lambda range, MAD and
diagonal dominance of both channels.
"""

import math

import numpy as np

from corrlab import ClusterAngles, UraGeometry, transmit_correlation
from corrlab.channel import ChannelDims, iid_channel, trial_seed
from corrlab.metrics import GramStats
from corrlab.numkit import psd_sqrt

deg = math.pi / 180
cluster = ClusterAngles.from_sigmas(10**0.7 * deg, 10**0.7 * deg, 10**-0.3 * deg, 10**-0.3 * deg)

print("   M   K  channel      lambda range   MAD     dominance")
for m, (a, b) in ((100, (10, 10)), (400, (20, 20))):
    k = m // 10
    root = psd_sqrt(transmit_correlation(UraGeometry(a, b), cluster).r_t)
    acc = {"iid": [], "correlated": []}
    for t in range(100):
        h = iid_channel(ChannelDims(m, k), trial_seed(0, m, k, t))
        acc["iid"].append(GramStats.from_channel(h))
        acc["correlated"].append(GramStats.from_channel(root @ h))
    for name, stats in acc.items():
        lr = np.median([s.lambda_range for s in stats])
        md = np.mean([s.mad for s in stats])
        dd = np.mean([s.diag_dominance for s in stats])
        print(f"{m:4d} {k:3d}  {name:<11}  {lr:10.3f}   {md:.4f}   {dd:.4f}")
