"""
The q-expansion route
=====================

g = Delta(q^2)^t - eps Delta(q)^t is a mod-p form of weight 12t on
Gamma_0(2).  Since the Hasse invariant has q-expansion 1, A_p^j divides g
exactly when g already appears in weight 12t - j(p - 1).  The largest such j
is found by linear algebra to the Sturm precision.
"""

import time

from ssorder.lucas import predicted_valuation
from ssorder.qforms import default_epsilon, eisenstein_expansion, l2_comparison_series, max_hasse_divisibility, sturm_precision

print("E_4 mod 5:", eisenstein_expansion(4, 10, 5).to_list())

for p, i in [(5, 1), (5, 5), (7, 1), (11, 1), (13, 1)]:
    t = i * (p * p - 1) // 12
    start = time.perf_counter()
    g = l2_comparison_series(p, t, 3 * t + 2)
    j = max_hasse_divisibility(g)
    print(f"p = {p:2d}, i = {i}, weight {12 * t:4d}, Sturm precision {sturm_precision(12 * t):3d}, "
          f"eps = {default_epsilon(p, t)}: j_max = {j} (predicted {predicted_valuation(t, p)}) "
          f"[{time.perf_counter() - start:.2f}s]")
