"""
Base-p binomial combinatorics.

``predicted_valuation`` works purely with digits (Lucas' theorem).
``kummer_oracle`` expands (1 + delta)^t directly with truncated series.  The
two never share code, so agreement between them is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PrecisionError
from .pseries import Indeterminate, TruncatedSeries, series_pow


@dataclass(frozen=True)
class BaseP:
    n: int
    p: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def digits(self) -> tuple[int, ...]:
        """Base-p digits, least significant first; () for n = 0."""
        out, n = [], self.n
        while n:
            n, d = divmod(n, self.p)
            out.append(d)
        return tuple(out)

    def value(self) -> int:
        return sum(d * self.p**k for k, d in enumerate(self.digits))


def nu_p(t: int, p: int) -> int:
    """Exponent of the largest power of p dividing t."""
    if t == 0:
        raise ValueError("nu_p(0) is infinite")
    t, nu = abs(t), 0
    while t % p == 0:
        t //= p
        nu += 1
    return nu


def _small_binom_mod(n: int, k: int, p: int) -> int:
    if k > n:
        return 0
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, p - 2, p) % p


def lucas_binom(t: int, m: int, p: int) -> int:
    """binom(t, m) mod p as a product of digitwise binomials."""
    if m < 0 or m > t:
        raise ValueError(f"need 0 <= m <= t, got m={m}, t={t}")
    td, md = BaseP(t, p).digits, BaseP(m, p).digits
    md = md + (0,) * (len(td) - len(md))
    out = 1
    for a, b in zip(td, md):
        out = out * _small_binom_mod(a, b, p) % p
        if not out:
            break
    return out


def lucas_witness(t: int, p: int) -> int:
    """Least m >= 1 with binom(t, m) != 0 mod p, found by scanning."""
    for m in range(1, t + 1):
        if lucas_binom(t, m, p):
            return m
    raise AssertionError("binom(t, t) = 1, so the scan always terminates")


def predicted_valuation(t: int, p: int) -> int:
    """p^nu_p(t), the order of (1 + delta)^t - 1 when v(delta) = 1."""
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    return p ** nu_p(t, p)


def kummer_oracle(t: int, p: int, delta: TruncatedSeries, prec: int | None = None) -> int:
    """v((1 + delta)^t - 1), computed by expanding the power.

    ``delta`` must have valuation exactly 1.  Default precision is
    p^nu_p(t) + 2.
    """
    if delta.field.p != p:
        raise ValueError(f"delta lives over characteristic {delta.field.p}, not {p}")
    if delta.valuation() != 1:
        raise ValueError("delta must have valuation exactly 1")
    n = prec if prec is not None else p ** nu_p(t, p) + 2
    if delta.prec < n:
        raise PrecisionError(f"delta is known to precision {delta.prec}, need {n}")
    delta = delta.truncate(n)
    v = (series_pow(1 + delta, t) - 1).valuation()
    if isinstance(v, Indeterminate):
        raise PrecisionError(f"(1 + delta)^{t} - 1 vanishes to precision {n}")
    return v
