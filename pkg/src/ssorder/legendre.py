"""
Legendre curves, supersingular parameters and 2-isogenies.

Curves are ``y^2 = x^3 + a2 x^2 + a4 x + a6`` with coefficients in any ring
supporting +, -, * (field elements or truncated series), so the same Velu
formulas serve both for pointwise validation and for local expansions in
s = lambda - lambda0.

The headline quantity is the leg ratio

    rho(s) = Delta(E'_{lambda0+s}) / Delta(E_{lambda0+s}),

where E' is the Velu quotient of the Legendre curve by <(0,0)>.  With that
normalization the isogeny pulls the target differential back to the source
one, so rho^t is the normalized pullback ratio for Delta^t once the Hodge
factor 2^{12t} = 1 is dropped.  The local order of rho^t - 1 in s is the
supersingular order being verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Any

from .errors import BranchMatchError, PrecisionError
from .ffield import (
    FieldDescriptor,
    FieldElement,
    Poly,
    construct_field,
    embed,
    poly_gcd,
    poly_roots,
)
from .lucas import nu_p
from .pseries import Indeterminate, TruncatedSeries, Valuation, from_poly, series_pow


# ---------------------------------------------------------------- curves


@dataclass(frozen=True)
class CurveModel:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 over a field or a series ring."""

    a2: Any
    a4: Any
    a6: Any
    lam: Any = None  # Legendre parameter, when the model is y^2 = x(x-1)(x-lam)

    @classmethod
    def legendre(cls, lam) -> "CurveModel":
        return cls(-(lam + 1), lam, lam * 0, lam)

    @property
    def b2(self):
        return self.a2 * 4

    @property
    def b4(self):
        return self.a4 * 2

    @property
    def b6(self):
        return self.a6 * 4

    @property
    def b8(self):
        return self.a2 * self.a6 * 4 - self.a4 * self.a4

    @property
    def c4(self):
        return self.b2 * self.b2 - self.b4 * 24

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9

    @property
    def j_invariant(self):
        c4 = self.c4
        return c4 * c4 * c4 / self.discriminant

    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, x, y) -> bool:
        return _is_zero(y * y - self.rhs(x))

    def cubic(self, field: FieldDescriptor) -> Poly:
        return Poly(field, [self.a6, self.a4, self.a2, 1])


def _is_zero(z) -> bool:
    if isinstance(z, TruncatedSeries):
        return isinstance(z.valuation(), Indeterminate)
    return z == 0


def legendre_discriminant_formula(lam):
    """16 lam^2 (lam - 1)^2."""
    return lam * lam * (lam - 1) * (lam - 1) * 16


# ---------------------------------------------------------------- isogenies


@dataclass(frozen=True)
class IsogenyData:
    """A Velu 2-isogeny: x -> (x^2 - x0 x + v) / (x - x0).

    The target model is normalized so that the isogeny pulls dx/y on the
    target back to dx/y on the source.
    """

    source: CurveModel
    target: CurveModel
    kernel_x: Any
    v: Any

    @property
    def x_numerator(self) -> tuple:
        """Coefficients (low -> high) of x^2 - x0 x + v."""
        return (self.v, -self.kernel_x, self.kernel_x * 0 + 1)

    @property
    def x_denominator(self) -> tuple:
        return (-self.kernel_x, self.kernel_x * 0 + 1)

    def map_x(self, x):
        d = x - self.kernel_x
        return (x * d + self.v) / d

    def map_point(self, x, y):
        d = x - self.kernel_x
        X = (x * d + self.v) / d
        Y = y * (d * d - self.v) / (d * d)
        return X, Y


def velu_2isogeny(E: CurveModel, x0) -> IsogenyData:
    """Velu's formulas for the kernel {O, (x0, 0)}."""
    if not _is_zero(E.rhs(x0)):
        raise ValueError(f"{x0!r} is not the x-coordinate of a 2-torsion point")
    v = x0 * x0 * 3 + E.a2 * x0 * 2 + E.a4
    w = x0 * v
    target = CurveModel(E.a2, E.a4 - v * 5, E.a6 - E.b2 * v - w * 7)
    return IsogenyData(E, target, x0, v)


def dual_kernel(phi: IsogenyData):
    """x-coordinate of phi(E[2]) on the target, for a Legendre source."""
    lam = phi.source.lam
    if lam is None:
        raise ValueError("dual_kernel needs a Legendre source model")
    one = lam * 0 + 1
    x1 = phi.map_x(one)
    xl = phi.map_x(lam)
    if not _is_zero(x1 - xl):
        raise AssertionError("the two non-kernel 2-torsion points have different images")
    return x1


def duplication_x(E: CurveModel, field: FieldDescriptor) -> tuple[Poly, Poly]:
    """x([2]P) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6)."""
    num = Poly(field, [-E.b8, -(E.b6 * 2), -E.b4, 0, 1])
    den = Poly(field, [E.b6, E.b4 * 2, E.b2, 4])
    return num, den


def composite_x_map(phi: IsogenyData, psi: IsogenyData, field: FieldDescriptor) -> tuple[Poly, Poly]:
    """x-map of psi o phi as a reduced-form pair of polynomials."""
    N = Poly(field, phi.x_numerator)
    D = Poly(field, phi.x_denominator)
    x0, v = psi.kernel_x, psi.v
    num = N * N - N * D * x0 + D * D * v
    den = D * (N - D * x0)
    return num, den


def composite_matches_duplication(phi: IsogenyData, field: FieldDescriptor) -> tuple[bool, Any]:
    """Check x(phi_dual o phi) = 4 x([2]) + r for a constant r.

    The factor 4 = 2^2 is the model change forced by phi_dual o phi = [2]
    when both legs are Velu-normalized.  Returns (ok, r).
    """
    psi = velu_2isogeny(phi.target, dual_kernel(phi))
    cn, cd = composite_x_map(phi, psi, field)
    dn, dd = duplication_x(phi.source, field)
    lhs = cn * dd - dn * cd * 4
    rhs_den = cd * dd
    r, rem = divmod(lhs, rhs_den)
    ok = rem.is_zero() and r.degree <= 0
    return ok, (r[0] if ok else None)


# ---------------------------------------------------------------- Hasse and Deuring


@lru_cache(maxsize=None)
def deuring_polynomial(p: int) -> Poly:
    """H_p(lam) = sum_{i=0}^{(p-1)/2} binom((p-1)/2, i)^2 lam^i over F_p."""
    h = (p - 1) // 2
    return Poly.from_ints(construct_field(p, 1), [comb(h, i) ** 2 for i in range(h + 1)])


@lru_cache(maxsize=None)
def hasse_coefficient_polynomial(p: int) -> Poly:
    """Coefficient of x^{p-1} in (x(x-1)(x-lam))^{(p-1)/2}, as a polynomial in lam."""
    h = (p - 1) // 2
    # bivariate dict {(deg_x, deg_lam): coeff}
    base = {(3, 0): 1, (2, 0): -1, (2, 1): -1, (1, 1): 1}  # x^3 - x^2 - lam x^2 + lam x
    acc = {(0, 0): 1}
    for _ in range(h):
        nxt: dict[tuple[int, int], int] = {}
        for (i, j), c in acc.items():
            for (k, l), d in base.items():
                key = (i + k, j + l)
                nxt[key] = (nxt.get(key, 0) + c * d) % p
        acc = nxt
    coeffs = [0] * (h + 1)
    for (i, j), c in acc.items():
        if i == p - 1:
            coeffs[j] = c
    return Poly.from_ints(construct_field(p, 1), coeffs)


def deuring_sign(p: int) -> int:
    """The sign s with hasse_coefficient_polynomial(p) = s * deuring_polynomial(p)."""
    H, A = deuring_polynomial(p), hasse_coefficient_polynomial(p)
    if A == H:
        return 1
    if A == -H:
        return -1
    raise AssertionError(f"Hasse coefficient polynomial differs from H_{p} beyond sign")


@dataclass(frozen=True, order=True)
class SupersingularPoint:
    """A root lam0 in F_{p^2} of the Deuring polynomial."""

    p: int
    key: tuple[int, ...]

    @classmethod
    def from_element(cls, lam0: FieldElement) -> "SupersingularPoint":
        F2 = construct_field(lam0.field.p, 2)
        return cls(lam0.field.p, embed(lam0, F2).coeffs)

    @property
    def field(self) -> FieldDescriptor:
        return construct_field(self.p, 2)

    @property
    def lambda0(self) -> FieldElement:
        return self.field(self.key)

    def conjugate(self) -> "SupersingularPoint":
        return SupersingularPoint.from_element(self.lambda0**self.p)

    def __repr__(self) -> str:
        return f"SupersingularPoint(p={self.p}, lambda0={list(self.key)})"


@lru_cache(maxsize=None)
def supersingular_points(p: int) -> tuple[SupersingularPoint, ...]:
    """All roots of H_p, each in F_{p^2}, simple and away from the cusps."""
    H = deuring_polynomial(p)
    if poly_gcd(H, H.derivative()).degree > 0:
        raise ArithmeticError(f"H_{p} has a repeated root")
    roots = poly_roots(H, 2)
    if len(roots) != H.degree:
        raise ArithmeticError(f"H_{p} has roots outside F_{p}^2")
    for r in roots:
        if r == 0 or r == 1:
            raise ArithmeticError(f"cusp {r!r} is a root of H_{p}")
    return tuple(SupersingularPoint.from_element(r) for r in roots)


def frobenius_orbits(points) -> list[tuple[SupersingularPoint, ...]]:
    seen, orbits = set(), []
    for P in points:
        if P in seen:
            continue
        orbit = tuple(sorted({P, P.conjugate()}))
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


@lru_cache(maxsize=None)
def _squares(F: FieldDescriptor) -> frozenset:
    return frozenset((x * x).coeffs for x in F.elements())


def point_count(E: CurveModel, F: FieldDescriptor) -> int:
    """#E(F) including the point at infinity, by summing over x."""
    sq = _squares(F)
    n = 1
    for x in F.elements():
        f = E.rhs(x)
        if f.is_zero():
            n += 1
        elif f.coeffs in sq:
            n += 2
    return n


def supersingular_oracle(lam0: FieldElement) -> bool:
    """Supersingularity of E_lam0 from a point count over F_{p^2}.

    E is supersingular iff its trace of Frobenius over F_{p^2} is divisible
    by p, i.e. #E(F_{p^2}) = 1 mod p.  Does not use H_p.
    """
    p = lam0.field.p
    F2 = construct_field(p, 2)
    lam = embed(lam0, F2)
    if lam == 0 or lam == 1:
        raise ValueError("lambda in {0, 1} is a cusp")
    return point_count(CurveModel.legendre(lam), F2) % p == 1


# ---------------------------------------------------------------- local expansions


def hasse_uniformizer_series(P: SupersingularPoint, prec: int) -> TruncatedSeries:
    """u = H_p(lam0 + s) as a series in s."""
    F = P.field
    lam = P.lambda0 + TruncatedSeries.gen(F, prec)
    return from_poly(deuring_polynomial(P.p).coeffs, lam)


def leg_ratio_series(P: SupersingularPoint, prec: int) -> TruncatedSeries:
    """rho(s) = Delta(E') / Delta(E) at lam = lam0 + s, E' the Velu quotient by (0,0)."""
    F = P.field
    lam = P.lambda0 + TruncatedSeries.gen(F, prec)
    E = CurveModel.legendre(lam)
    phi = velu_2isogeny(E, lam * 0)
    dE = E.discriminant
    if not dE.is_unit():
        raise AssertionError("source discriminant vanishes at a non-cuspidal point")
    return phi.target.discriminant / dE


def delta_valuation(P: SupersingularPoint, prec: int = 4) -> Valuation:
    """v(rho(s)/rho(0) - 1): the order of the first-order perturbation."""
    rho = leg_ratio_series(P, prec)
    return (rho / rho[0] - 1).valuation()


@dataclass(frozen=True)
class LocalOrder:
    point: SupersingularPoint
    t: int
    precision: int
    valuation: Valuation
    rho0: FieldElement
    rho0_pow_t: FieldElement
    normalized: bool  # True when rho(0)^t != 1 forced dividing it out

    @property
    def rho0_pow_t_is_one(self) -> bool:
        return self.rho0_pow_t == 1


def local_l2_order(P: SupersingularPoint, t: int, prec: int | None = None) -> LocalOrder:
    """Order in s of rho(s)^t - 1 at P.

    If rho(0)^t != 1 the raw series has order 0; the order of
    (rho/rho(0))^t - 1 is reported instead and the record is flagged.
    """
    n = prec if prec is not None else P.p ** nu_p(t, P.p) + 2
    rho = leg_ratio_series(P, n)
    rho0 = rho[0]
    c = rho0**t
    # rho^t - 1 = c * ((rho/rho0)^t - 1) + (c - 1); when c == 1 the two agree
    v = (series_pow(rho / rho0, t) - 1).valuation()
    return LocalOrder(P, t, n, v, rho0, c, normalized=(c != 1))


def t_from_index(p: int, i: int) -> int:
    num = i * (p * p - 1)
    if num % 12:
        raise ValueError(f"i(p^2-1)/12 is not integral for p={p}, i={i}")
    return num // 12


def l2_local_valuation(p: int, i: int, prec: int | None = None) -> dict[SupersingularPoint, Valuation]:
    """Order of L2(Delta^t) at each supersingular lam0, t = i(p^2-1)/12."""
    t = t_from_index(p, i)
    return {P: local_l2_order(P, t, prec).valuation for P in supersingular_points(p)}


# ---------------------------------------------------------------- legs


def _restrict(x: FieldElement, F: FieldDescriptor) -> FieldElement | None:
    """Preimage of x under the embedding F -> x.field, if any."""
    if x.field == F:
        return x
    for y in F.elements():
        if embed(y, x.field) == x:
            return y
    return None


def _work_field(lam0: FieldElement) -> FieldDescriptor:
    """F_{p^2} if lam0 is a square there, else F_{p^4}."""
    F2 = construct_field(lam0.field.p, 2)
    base = embed(lam0, F2) if lam0.field.m <= 2 else lam0
    if lam0.field.m <= 2 and base.is_square():
        return F2
    return construct_field(lam0.field.p, 4)


def leg_lambda_series(lam0: FieldElement, prec: int, negate: bool = False) -> TruncatedSeries:
    """Legendre parameter of the Velu quotient along lam = lam0 + s.

    The quotient of E_lam by <(0,0)> has 2-torsion abscissae 1 + lam and
    +-2 sqrt(lam).  Sending 1 + lam (the dual kernel) to 0 and 2 sqrt(lam) to
    1 gives lam' = ((1 + r) / (1 - r))^2 with r = sqrt(lam).  The branch r is
    the first-ordered square root, or its negative when ``negate``.
    """
    K = _work_field(lam0)
    lam = embed(lam0, K) + TruncatedSeries.gen(K, prec)
    r = lam.sqrt()
    if negate:
        r = -r
    q = (1 + r) / (1 - r)
    return q * q


@dataclass(frozen=True)
class LegsMultipliers:
    c: FieldElement
    c_dual: FieldElement
    lambda_target: FieldElement  # lam'(0), restricted to F_{p^2}
    dual_branch_ambiguous: bool

    @property
    def product(self) -> FieldElement:
        K = construct_field(self.c.field.p, max(self.c.field.m, self.c_dual.field.m))
        return embed(self.c, K) * embed(self.c_dual, K)

    @property
    def c_in_prime_field(self) -> bool:
        return self.c ** self.c.field.p == self.c


def _first_order(H: Poly, lam_series: TruncatedSeries, lam0: FieldElement) -> FieldElement:
    """[s^1] H(lam'(s)) / H'(lam0)."""
    u = from_poly(H.coeffs, lam_series)
    if u[0]:
        raise AssertionError("leg does not land on a supersingular point")
    dH = H.derivative()(embed(lam0, lam_series.field))
    return u[1] / dH


def legs_multipliers(P: SupersingularPoint, prec: int = 3) -> LegsMultipliers:
    """First-order multipliers of u = H_p(lam) along phi and along its dual.

    c = [s^1] H_p(lam'(s)) / H_p'(lam0) for the first-ordered branch lam'.
    The dual leg starts at lam'(0) and uses the branch whose constant term
    is lam0.  When both branches qualify (lam0 = 1/lam0, i.e. lam0 = -1),
    the branch whose composite with lam' reproduces lam0 + s to first order
    is taken and the record is flagged.
    """
    H = deuring_polynomial(P.p)
    lam0 = P.lambda0
    fwd = leg_lambda_series(lam0, prec)
    c = _first_order(H, fwd, lam0)

    lam_t = _restrict(fwd[0], P.field)
    if lam_t is None:
        raise AssertionError("target lambda is not in F_{p^2}")
    branches = [leg_lambda_series(lam_t, prec, negate=neg) for neg in (False, True)]
    K4 = construct_field(P.p, 4)
    target0 = embed(lam0, K4)
    matching = [b for b in branches if embed(b[0], K4) == target0]
    if not matching:
        raise BranchMatchError(f"no dual branch returns to {lam0!r}")
    ambiguous = len(matching) > 1
    if ambiguous:
        fwd4 = fwd.change_field(K4)
        shift = fwd4 - fwd4[0]
        ident = TruncatedSeries(K4, [target0, 1], 2)
        good = []
        for b in matching:
            comp = b.change_field(K4).compose(shift).truncate(2)
            if comp == ident:
                good.append(b)
        if len(good) != 1:
            raise BranchMatchError("dual branch is not determined to first order")
        matching = good
    dual = matching[0]
    c_dual = _first_order(H, dual, lam_t)
    return LegsMultipliers(c, c_dual, lam_t, ambiguous)
