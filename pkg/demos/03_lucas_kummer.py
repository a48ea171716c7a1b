"""
Lucas' theorem against a direct expansion
=========================================

If v(delta) = 1, then (1 + delta)^t - 1 vanishes to order exactly
p^nu_p(t).  The digit rule predicts it; a series expansion measures it.
"""

import random

from ssorder.ffield import construct_field
from ssorder.lucas import BaseP, kummer_oracle, lucas_binom, lucas_witness, predicted_valuation
from ssorder.pseries import TruncatedSeries

p = 5
for t in (7, 10, 50, 250):
    print(f"t = {t:3d}, digits base {p} = {BaseP(t, p).digits}, "
          f"first m with binom(t, m) != 0 mod p: {lucas_witness(t, p)}")

print("binom(10, 5) mod 5 by digits:", lucas_binom(10, 5, 5))

rng = random.Random(0)
F = construct_field(p, 1)
for t in (10, 50, 375):
    n = predicted_valuation(t, p) + 2
    delta = TruncatedSeries(F, [0, rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 2)])
    print(f"t = {t}: predicted {predicted_valuation(t, p)}, measured {kummer_oracle(t, p, delta)}")
