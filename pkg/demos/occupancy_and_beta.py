"""Occupancy counts and the beta = 1, 4 combinations.

The thinned-gap generating function is a polynomial in the thinning
parameter s whose coefficients are the occupancy probabilities
P(exactly k eigenangles in (0, t0)).  Sampling it at n+1 nodes and
solving the Vandermonde system recovers the full distribution, here
compared against a matrix-sampling histogram.

The second half assembles the orthogonal-group generating function for
the circular beta = 1 and beta = 4 ensembles from the label averages and
compares it with the corresponding fixed-s prediction.
"""

import numpy as np
from mpmath import mp, mpf

from orthank.asym import cbe_gap_s
from orthank.ensembles import cbe_generating, occupancy_distribution
from orthank.mc import occupancy_counts
from orthank.symbols import EnsembleLabel

mp.prec = 256

label = EnsembleLabel.parse("1-")
n = 6
t0 = mpf(1)

probs = occupancy_distribution(label, n, t0)
rng = np.random.default_rng(11)
samples = 3000
hist = occupancy_counts(label, n, float(t0), samples, rng)

print("occupancy of (0, 1) for label 1-, n = 6")
print("%3s %12s %12s" % ("k", "exact", "sampled"))
for k, p in enumerate(probs):
    print("%3d %12s %12.4f" % (k, mp.nstr(p, 6), hist[k] / samples))
mean = mp.fsum(k * p for k, p in enumerate(probs))
print("mean count %s  (density heuristic n*t0/pi = %s)"
      % (mp.nstr(mean, 6), mp.nstr(n * t0 / mp.pi, 6)))

print()
N = 24
s = mpf("0.4")
for beta in (1, 4):
    exact = cbe_generating(beta, N, mp.pi / 2, s)
    pred = cbe_gap_s(beta, N, mp.pi / 2, s)
    dev = abs(mp.expm1(mp.log(exact) - pred.log_value))
    print("beta = %d, N = %d, s = 0.4:  exact log %s  predicted log %s  |ratio-1| %s"
          % (beta, N, mp.nstr(mp.log(exact), 8),
             mp.nstr(pred.log_value, 8), mp.nstr(dev, 3)))
