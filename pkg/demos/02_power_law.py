"""
The power law of practice
=========================

One chunk is practised every ``dt`` seconds. Each use adds a decaying
trace; retrieval latency is ``F exp(-A) + C``. On log-log axes the latency
after ``k`` uses falls on a line whose slope is ``d - 1``.
"""

import numpy as np

from actrsim.experiments import powerlaw

for d in (0.5, 0.3):
    result = powerlaw(d=d, dt=10.0, events=100)
    print(f"decay d={d}: fitted slope {result.slope:+.3f} (d - 1 = {d - 1:+.2f})")

result = powerlaw(d=0.5, dt=10.0, events=100)
rows = np.array(result.rows)

# a few points of the curve; latency keeps falling, ever more slowly
for k in (1, 2, 5, 10, 20, 50, 100):
    _, profile, latency = rows[k - 1]
    print(f"  after {k:3d} uses: latency {latency:.3f} s")

# the slope between decades is steady once a handful of traces exist
logk = np.log(rows[:, 0])
logl = np.log(rows[:, 2] - 0.05)
for lo, hi in ((10, 100), (5, 50)):
    print(f"  slope k={lo}..{hi}: {(logl[hi - 1] - logl[lo - 1]) / (logk[hi - 1] - logk[lo - 1]):+.3f}")
