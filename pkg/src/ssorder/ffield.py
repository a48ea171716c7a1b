"""
Exact arithmetic in F_p, F_{p^2} and F_{p^4} for small primes p >= 5.

Fields are built deterministically: the defining modulus of F_{p^m} is the
first monic irreducible polynomial of degree m when monic polynomials are
ordered lexicographically on their coefficient vectors (a_0, ..., a_{m-1}).
Elements are coefficient vectors in the power basis 1, x, ..., x^{m-1} and
are ordered the same way.  That order is used wherever a choice has to be
made (square roots, embeddings, branches), which keeps every run
reproducible.

Root finding is an exhaustive scan over the field, which is intended for
p^m up to a few times 10^4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import FieldMismatchError

SUPPORTED_DEGREES = (1, 2, 4)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- integer polynomial helpers (coefficient lists mod p, low -> high) ---

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over F_p."""
    r = [x % p for x in a]
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            for i in range(db + 1):
                r[k - db + i] = (r[k - db + i] - c * b[i]) % p
    return _trim(r[:db])


def _monic_polys(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of a given degree in lex order on (a_0, ..., a_{d-1})."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg(f)//2."""
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(p, d):
            if not _int_poly_mod(f, g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """The field F_{p^m} = F_p[x]/(modulus).

    ``modulus`` holds all m+1 coefficients, low degree first, leading 1
    included.  For m = 1 the modulus is ``x`` and the field is F_p itself.
    """

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.m

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} is not an element of {self!r}")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.m - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            raise ValueError(f"expected at most {self.m} coefficients, got {len(coeffs)}")
        coeffs += [0] * (self.m - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x (equal to 0 in the prime field, by convention)."""
        if self.m == 1:
            return self(0)
        return self([0, 1])

    def elements(self) -> Iterator["FieldElement"]:
        """All elements in the total order used throughout the package."""
        for c in itertools.product(range(self.p), repeat=self.m):
            yield FieldElement(self, tuple(c))

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, m = self.p, self.m
        if m == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(m):
                    prod[k - m + i] -= c * mod[i]
        return tuple(x % p for x in prod[:m])


@lru_cache(maxsize=None)
def construct_field(p: int, m: int = 1) -> FieldDescriptor:
    """Deterministic descriptor for F_{p^m}, m in {1, 2, 4}, p >= 5 prime."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    if p < 5:
        raise ValueError(f"p must be at least 5, got {p}")
    if m not in SUPPORTED_DEGREES:
        raise ValueError(f"extension degree must be one of {SUPPORTED_DEGREES}, got {m!r}")
    if m == 1:
        return FieldDescriptor(p, 1, (0, 1))
    for f in _monic_polys(p, m):
        if _is_irreducible(f, p):
            return FieldDescriptor(p, m, f)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class FieldElement:
    """An element of a :class:`FieldDescriptor`; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field!r} and {other.field!r}"
                )
            return other
        if isinstance(other, int):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __lt__(self, other: "FieldElement") -> bool:
        if not isinstance(other, FieldElement) or other.field != self.field:
            return NotImplemented
        return self.coeffs < other.coeffs

    def sort_key(self) -> tuple[int, ...]:
        return self.coeffs

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.in_prime_field():
            raise ValueError(f"{self!r} does not lie in the prime field")
        return self.coeffs[0]

    def __repr__(self) -> str:
        if self.field.m == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else (f"{c}*x" if i == 1 else f"{c}*x^{i}"))
        return "(" + (" + ".join(terms) or "0") + f" in {self.field!r})"

    def is_square(self) -> bool:
        if self.is_zero():
            return True
        return self ** ((self.field.order - 1) // 2) == 1


def frobenius(x: FieldElement) -> FieldElement:
    """x -> x^p."""
    return x ** x.field.p


def sqrt(x: FieldElement) -> FieldElement:
    """The square root of x that comes first in the element order.

    Raises ValueError if x is not a square in its field.
    """
    F = x.field
    if x.is_zero():
        return x
    if not x.is_square():
        raise ValueError(f"{x!r} is not a square in {F!r}")
    # Tonelli-Shanks in the cyclic group of order q - 1.
    q = F.order
    s, odd = 0, q - 1
    while odd % 2 == 0:
        odd //= 2
        s += 1
    z = next(e for e in F.elements() if not e.is_zero() and not e.is_square())
    c = z**odd
    r = x ** ((odd + 1) // 2)
    t = x**odd
    k = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (k - i - 1))
        r = r * b
        c = b * b
        t = t * c
        k = i
    return min(r, -r)


@lru_cache(maxsize=None)
def _generator_image(source: FieldDescriptor, target: FieldDescriptor) -> FieldElement:
    """Image of the generator of ``source`` under the canonical embedding."""
    f = Poly.from_ints(construct_field(source.p, 1), source.modulus)
    roots = poly_roots(f, target.m)
    if not roots:
        raise ValueError(f"{source!r} does not embed in {target!r}")
    return roots[0]


def embed(x: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Canonical embedding F_{p^m} -> F_{p^n} (m | n).

    F_{p^2} -> F_{p^4} sends x to the first root, in element order, of the
    F_{p^2} modulus inside F_{p^4}.
    """
    src = x.field
    if src == target:
        return x
    if src.p != target.p or target.m % src.m:
        raise FieldMismatchError(f"no embedding {src!r} -> {target!r}")
    if src.m == 1:
        return target(x.coeffs[0])
    theta = _generator_image(src, target)
    acc = target.zero
    power = target.one
    for c in x.coeffs:
        if c:
            acc = acc + power * c
        power = power * theta
    return acc


class Poly:
    """Univariate polynomial over a finite field, coefficients low -> high.

    The zero polynomial has degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: Iterable):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)

    @classmethod
    def from_ints(cls, field: FieldDescriptor, ints: Iterable[int]) -> "Poly":
        return cls(field, [field(int(c)) for c in ints])

    @classmethod
    def x(cls, field: FieldDescriptor) -> "Poly":
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> FieldElement:
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> FieldElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        return "Poly(" + ", ".join(repr(c) for c in self.coeffs) + f"; {self.field!r})"

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field, [self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return Poly(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(o.coeffs)
        if dq < 0:
            return Poly(self.field, []), self
        q = [self.field.zero] * (dq + 1)
        inv_lead = o.leading().inverse()
        for k in range(dq, -1, -1):
            c = r[k + o.degree] * inv_lead
            q[k] = c
            if c:
                for i, b in enumerate(o.coeffs):
                    r[k + i] = r[k + i] - c * b
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate at x; x may live in an extension of the coefficient field."""
        if isinstance(x, int):
            x = self.field(x)
        coeffs = self.coeffs
        if isinstance(x, FieldElement) and x.field != self.field:
            coeffs = tuple(embed(c, x.field) for c in coeffs)
        acc = x.field.zero if isinstance(x, FieldElement) else 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_roots(f: Poly, m: int) -> list[FieldElement]:
    """Roots of f in F_{p^m}, found by scanning the whole field.

    Returned without multiplicity and sorted in the element order.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    target = construct_field(f.field.p, m)
    if target.m % f.field.m:
        raise FieldMismatchError(f"{f.field!r} is not a subfield of {target!r}")
    coeffs = tuple(embed(c, target) for c in f.coeffs)
    p = target.p
    if target.m == 1:
        ints = [c.coeffs[0] for c in coeffs]
        hits = []
        for a in range(p):
            acc = 0
            for c in reversed(ints):
                acc = (acc * a + c) % p
            if acc == 0:
                hits.append(target(a))
        return hits
    hits = []
    for x in target.elements():
        acc = target.zero
        for c in reversed(coeffs):
            acc = acc * x + c
        if acc.is_zero():
            hits.append(x)
    return hits
