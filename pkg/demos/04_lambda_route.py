"""
The lambda-chart route
======================

At each supersingular lam0 we expand the leg ratio
rho = Delta(E') / Delta(E) = 16 (1 - lam)^2 / lam in s = lam - lam0 and
read off the order of rho^t - 1.
"""

from ssorder.legendre import local_l2_order, legs_multipliers, supersingular_points, t_from_index
from ssorder.lucas import predicted_valuation

for p, i in [(5, 1), (5, 5), (13, 13), (7, 1)]:
    t = t_from_index(p, i)
    print(f"\np = {p}, i = {i}, t = {t}, predicted p^nu = {predicted_valuation(t, p)}")
    for P in supersingular_points(p):
        rec = local_l2_order(P, t)
        legs = legs_multipliers(P)
        print(f"  lambda0 = {list(P.key)}: order {rec.valuation}, rho(0)^t = 1: {rec.rho0_pow_t_is_one}, "
              f"c * c_dual == 1: {legs.product == 1}, c in F_p: {legs.c_in_prime_field}")

# lam0 = -1 (p = 3 mod 4) is fixed by lam -> 1/lam, which leaves rho
# unchanged.  The map to the quotient curve ramifies there, so the order in
# s doubles; divided by the ramification index it is p^nu again.
p, i = 7, 7
t = t_from_index(p, i)
P = next(P for P in supersingular_points(p) if P.lambda0 == -1)
rec = local_l2_order(P, t, 4 * predicted_valuation(t, p) + 2)
print(f"\np = 7, i = 7 at lambda0 = -1: order {rec.valuation} = 2 * {predicted_valuation(t, p)}")
