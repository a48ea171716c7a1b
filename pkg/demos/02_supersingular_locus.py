"""
The supersingular locus of the Legendre family
==============================================

The Deuring polynomial H_p(lam) cuts out the supersingular lam.  We compare
it with the Hasse coefficient and with brute-force point counts.
"""

from ssorder.ffield import construct_field
from ssorder.legendre import (
    deuring_polynomial,
    deuring_sign,
    hasse_coefficient_polynomial,
    supersingular_oracle,
    supersingular_points,
)

for p in (5, 7, 11, 13):
    H = deuring_polynomial(p)
    print(f"p = {p:2d}  H_p = {H}")
    print(f"        Hasse coefficient = {deuring_sign(p):+d} * H_p:", hasse_coefficient_polynomial(p))

# every root lives in F_{p^2}; p = 11 has the rational root -1
for p in (5, 11):
    pts = supersingular_points(p)
    print(f"p = {p}: {len(pts)} supersingular lambda0:", [list(P.key) for P in pts])

# point counting over F_121 never looks at H_11
F2 = construct_field(11, 2)
found = [x for x in F2.elements() if x != 0 and x != 1 and supersingular_oracle(x)]
print("point-count oracle agrees:", set(found) == {P.lambda0 for P in supersingular_points(11)})
