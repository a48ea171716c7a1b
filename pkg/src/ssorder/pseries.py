"""
Truncated power series over F_{p^m}.

A :class:`TruncatedSeries` is known modulo u^N, where N is its precision.
Coefficients are stored densely as an (N, m) integer array holding each
coefficient's coordinates in the power basis of the field.

Precision is tracked conservatively:

* sums keep the smaller precision;
* a product f*g is known modulo u^min(N_f + v(g), N_g + v(f));
* f(g) with v(g) = v >= 1 is known modulo u^min(v * N_f, N_g).

:func:`series_valuation` returns an :class:`Indeterminate` marker instead of
an integer when every stored coefficient vanishes.  Callers treat that as a
precision failure, never as a value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import FieldMismatchError
from .ffield import FieldDescriptor, FieldElement, embed, sqrt as field_sqrt


@dataclass(frozen=True)
class Indeterminate:
    """Valuation is at least ``bound``; nothing more is known."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


Valuation = Union[int, Indeterminate]


def _mul_arrays(field: FieldDescriptor, a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """First n coefficients of the product of two coefficient arrays."""
    p, m = field.p, field.m
    out = np.zeros((n, 2 * m - 1), dtype=np.int64)
    for j in range(m):
        aj = a[:, j]
        if not aj.any():
            continue
        for l in range(m):
            bl = b[:, l]
            if not bl.any():
                continue
            c = np.convolve(aj, bl)[:n]
            out[: len(c), j + l] += c
    out %= p
    mod = field.modulus
    for k in range(2 * m - 2, m - 1, -1):
        col = out[:, k]
        for i in range(m):
            if mod[i]:
                out[:, k - m + i] -= col * mod[i]
        out[:, k - m : k] %= p
    return out[:, :m] % p


class TruncatedSeries:
    """Power series c_0 + c_1 u + ... + c_{N-1} u^{N-1} + O(u^N)."""

    __slots__ = ("field", "_a")

    def __init__(self, field: FieldDescriptor, coeffs, prec: int | None = None):
        self.field = field
        if isinstance(coeffs, np.ndarray) and coeffs.ndim == 2:
            arr = coeffs.astype(np.int64) % field.p
        else:
            rows = [field(c).coeffs for c in coeffs]
            arr = np.array(rows, dtype=np.int64).reshape(len(rows), field.m)
        if prec is not None:
            if prec < len(arr):
                arr = arr[:prec]
            elif prec > len(arr):
                arr = np.vstack([arr, np.zeros((prec - len(arr), field.m), dtype=np.int64)])
        arr.setflags(write=False)
        self._a = arr

    # -- constructors --

    @classmethod
    def gen(cls, field: FieldDescriptor, prec: int) -> "TruncatedSeries":
        """The series variable u, to precision prec."""
        return cls(field, [0, 1], prec)

    @classmethod
    def constant(cls, field: FieldDescriptor, c, prec: int) -> "TruncatedSeries":
        return cls(field, [c], prec)

    # -- inspection --

    @property
    def prec(self) -> int:
        return len(self._a)

    def __len__(self) -> int:
        return len(self._a)

    def __getitem__(self, k: int) -> FieldElement:
        if not 0 <= k < len(self._a):
            raise IndexError(f"coefficient {k} is beyond precision {self.prec}")
        return FieldElement(self.field, tuple(int(x) for x in self._a[k]))

    @property
    def coeffs(self) -> list[FieldElement]:
        return [self[k] for k in range(self.prec)]

    @property
    def array(self) -> np.ndarray:
        return self._a

    def valuation(self) -> Valuation:
        nz = np.flatnonzero(self._a.any(axis=1))
        if nz.size == 0:
            return Indeterminate(self.prec)
        return int(nz[0])

    def is_unit(self) -> bool:
        return self.prec > 0 and bool(self._a[0].any())

    def truncate(self, prec: int) -> "TruncatedSeries":
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        return TruncatedSeries(self.field, self._a[:prec])

    def change_field(self, target: FieldDescriptor) -> "TruncatedSeries":
        """Push coefficients through the canonical embedding."""
        if target == self.field:
            return self
        return TruncatedSeries(target, [embed(c, target) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.prec == other.prec
            and np.array_equal(self._a, other._a)
        )

    def __hash__(self) -> int:
        return hash((self.field, self._a.tobytes()))

    def __repr__(self) -> str:
        terms = []
        for k in range(self.prec):
            c = self[k]
            if c:
                terms.append(f"{c!r}" if k == 0 else f"{c!r}*u^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(u^{self.prec})"

    # -- ring operations --

    def _coerce(self, other) -> "TruncatedSeries | None":
        if isinstance(other, TruncatedSeries):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, FieldElement)):
            # constants are exact; give them the precision of self
            return TruncatedSeries.constant(self.field, other, self.prec)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.prec, o.prec)
        return TruncatedSeries(self.field, self._a[:n] + o._a[:n])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, -self._a)

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

    def _scale(self, c: FieldElement) -> "TruncatedSeries":
        c = self.field(c)
        col = np.array([c.coeffs], dtype=np.int64)
        return TruncatedSeries(self.field, _mul_arrays(self.field, self._a, col, self.prec))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self._scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        va, vb = self.valuation(), o.valuation()
        va = va.bound if isinstance(va, Indeterminate) else va
        vb = vb.bound if isinstance(vb, Indeterminate) else vb
        n = min(self.prec + vb, o.prec + va)
        out = _mul_arrays(self.field, self._a, o._a, n)
        if len(out) < n:
            out = np.vstack([out, np.zeros((n - len(out), self.field.m), dtype=np.int64)])
        return TruncatedSeries(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.constant(self.field, 1, self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse of a unit, by Newton iteration."""
        if not self.is_unit():
            raise ZeroDivisionError("only series with nonzero constant term are invertible")
        F, n = self.field, self.prec
        b = TruncatedSeries.constant(F, self[0].inverse(), 1)
        k = 1
        while k < n:
            k = min(2 * k, n)
            a = self.truncate(k)
            b = TruncatedSeries(F, b._a, k)
            b = b * (2 - a * b)
        return b

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self._scale(self.field(other).inverse())
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def derivative(self) -> "TruncatedSeries":
        p = self.field.p
        k = np.arange(self.prec, dtype=np.int64)[:, None]
        return TruncatedSeries(self.field, ((self._a * k) % p)[1:])

    # convenience wrappers
    def compose(self, g: "TruncatedSeries") -> "TruncatedSeries":
        return series_compose(self, g)

    def sqrt(self) -> "TruncatedSeries":
        return series_sqrt(self)


def series_valuation(s: TruncatedSeries) -> Valuation:
    """Least index with a nonzero coefficient, or Indeterminate(N)."""
    return s.valuation()


def series_pow(s: TruncatedSeries, t: int) -> TruncatedSeries:
    """(1 + (s - 1))^t by binary exponentiation; needs s(0) == 1 exactly."""
    if s.prec == 0 or s[0] != 1:
        raise ValueError("series_pow needs a series with constant term exactly 1")
    if t < 1:
        raise ValueError(f"exponent must be positive, got {t}")
    return s**t


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(u)) for g with zero constant term.

    The result is known modulo u^min(v * N_f, N_g) with v = v(g); when g
    vanishes to its full precision the bound is N_g.
    """
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field!r} vs {g.field!r}")
    if g.prec == 0 or g[0]:
        raise ValueError("inner series must have zero constant term")
    v = g.valuation()
    n = g.prec if isinstance(v, Indeterminate) else min(v * f.prec, g.prec)
    F = f.field
    gt = g.truncate(n)
    acc = TruncatedSeries.constant(F, 0, n)
    for k in range(f.prec - 1, -1, -1):
        acc = TruncatedSeries(F, _mul_arrays(F, acc.array, gt.array, n), n) + TruncatedSeries.constant(F, f[k], n)
    return acc


def series_sqrt(s: TruncatedSeries) -> TruncatedSeries:
    """Square root of a unit whose constant term is a square in the field.

    Of the two roots, returns the one whose constant term comes first in the
    element order.
    """
    if s.prec == 0 or not s[0]:
        raise ValueError("constant term is zero; factor out even powers of u first")
    c0 = s[0]
    if not c0.is_square():
        raise ValueError(f"constant term {c0!r} is not a square; lift to a larger field")
    F, n = s.field, s.prec
    r = TruncatedSeries.constant(F, field_sqrt(c0), 1)
    half = F(2).inverse()
    k = 1
    while k < n:
        k = min(2 * k, n)
        r = TruncatedSeries(F, r.array, k)
        r = (r + s.truncate(k) / r) * half
    return r


def series_reverse(g: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse h of g (g(0) = 0, g'(0) != 0): g(h(u)) = u."""
    if g.prec < 2 or g[0] or not g[1]:
        raise ValueError("reversion needs g(0) = 0 and g'(0) != 0")
    F, n = g.field, g.prec
    inv1 = g[1].inverse()
    h = TruncatedSeries(F, [0, inv1], n)
    u = TruncatedSeries.gen(F, n)
    for k in range(2, n):
        err = series_compose(g, h) - u
        if err[k]:
            h = h - TruncatedSeries(F, [0] * k + [err[k] * inv1], n)
    return h


def from_poly(coeffs: Iterable[FieldElement], x: TruncatedSeries) -> TruncatedSeries:
    """Evaluate a polynomial (coefficients low -> high) at a series x."""
    cs = list(coeffs)
    F = x.field
    acc = TruncatedSeries.constant(F, 0, x.prec)
    for c in reversed(cs):
        acc = acc * x + embed(c, F)
    return acc
