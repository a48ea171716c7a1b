"""
q-expansions of Delta, Eisenstein series and the weight-2 level-2 form, plus
the mod-p filtration solver used for Hasse-invariant divisibility.

Coefficients are exact (ints / Fractions) until :meth:`QExpansion.reduce`
is called; reduced expansions hold an int64 numpy array mod p.

Divisibility by A_p^j is tested on q-expansions: A_p has q-expansion 1, so a
weight-k form g is divisible by A_p^j exactly when some form of weight
k - j(p-1) on Gamma_0(2) has the same q-expansion mod p.  Membership is
certified to the Sturm precision k/4 + 2 (index 3 of Gamma_0(2) in SL_2(Z),
plus a guard coefficient).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import PrecisionError


def sturm_precision(k: int) -> int:
    """Coefficient count certifying equality of weight-k forms on Gamma_0(2)."""
    return k // 4 + 2


# ---------------------------------------------------------------- helpers


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """B_k from sum_{j=0}^{n} binom(n+1, j) B_j = 0, with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    B = [Fraction(1)]
    binom_row = [1]
    for n in range(1, k + 1):
        # row n+1 of Pascal's triangle
        row = [1]
        for j in range(1, n + 2):
            row.append(row[-1] * (n + 2 - j) // j)
        binom_row = row
        s = sum(binom_row[j] * B[j] for j in range(n))
        B.append(-s / binom_row[n])
    return B[k]


def divisor_sums(power: int, count: int) -> list[int]:
    """[sigma_power(n) for n in range(count)], with sigma(0) = 0."""
    out = [0] * count
    for d in range(1, count):
        dp = d**power
        for n in range(d, count, d):
            out[n] += dp
    return out


def _to_mod_p(c, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise ZeroDivisionError(f"coefficient {c} has denominator divisible by {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def _mul_mod(a: np.ndarray, b: np.ndarray, n: int, p: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    c = np.convolve(a[:n], b[:n])[:n] % p
    out[: len(c)] = c
    return out


def _mul_exact(a: Sequence, b: Sequence, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                out[i + j] += x * b[j]
    return out


# ---------------------------------------------------------------- QExpansion


@dataclass(frozen=True, eq=False)
class QExpansion:
    """Truncated q-expansion a_0 + a_1 q + ... + a_{M-1} q^{M-1} + O(q^M).

    ``p`` is None for exact coefficients and the characteristic otherwise.
    """

    coeffs: tuple | np.ndarray
    weight: int
    level: int = 1
    p: int | None = None

    def __post_init__(self):
        if self.p is None:
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        else:
            arr = np.asarray(self.coeffs, dtype=np.int64) % self.p
            arr.setflags(write=False)
            object.__setattr__(self, "coeffs", arr)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def to_list(self) -> list:
        return [int(c) if self.p is not None else c for c in self.coeffs]

    def reduce(self, p: int) -> "QExpansion":
        if self.p is not None:
            if self.p != p:
                raise ValueError(f"already reduced mod {self.p}")
            return self
        return QExpansion([_to_mod_p(c, p) for c in self.coeffs], self.weight, self.level, p)

    def truncate(self, M: int) -> "QExpansion":
        if M > self.precision:
            raise PrecisionError(f"expansion known to {self.precision} terms, asked for {M}")
        return QExpansion(self.coeffs[:M], self.weight, self.level, self.p)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "QExpansion"):
        if self.p != other.p:
            raise ValueError("cannot mix expansions over different coefficient rings")

    def __add__(self, other: "QExpansion") -> "QExpansion":
        self._check(other)
        if self.weight != other.weight:
            raise ValueError(f"weights differ: {self.weight} vs {other.weight}")
        n = min(self.precision, other.precision)
        if self.p is None:
            cs = [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])]
        else:
            cs = self.coeffs[:n] + other.coeffs[:n]
        return QExpansion(cs, self.weight, max(self.level, other.level), self.p)

    def __neg__(self) -> "QExpansion":
        cs = [-a for a in self.coeffs] if self.p is None else -self.coeffs
        return QExpansion(cs, self.weight, self.level, self.p)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + (-other)

    def scale(self, c) -> "QExpansion":
        if self.p is None:
            return QExpansion([c * a for a in self.coeffs], self.weight, self.level, None)
        return QExpansion(self.coeffs * (_to_mod_p(c, self.p)), self.weight, self.level, self.p)

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return self.scale(other)
        self._check(other)
        n = min(self.precision, other.precision)
        if self.p is None:
            cs = _mul_exact(self.coeffs, other.coeffs, n)
        else:
            cs = _mul_mod(self.coeffs, other.coeffs, n, self.p)
        return QExpansion(cs, self.weight + other.weight, max(self.level, other.level), self.p)

    def __pow__(self, e: int) -> "QExpansion":
        if e < 0:
            raise ValueError("negative powers are not modular forms")
        one = [1] + [0] * (self.precision - 1)
        result = QExpansion(one, 0, self.level, self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def v2(f: QExpansion) -> QExpansion:
    """q -> q^2: same weight, level 2, same precision."""
    M = f.precision
    if f.p is None:
        cs = [0] * M
        for n in range(0, (M + 1) // 2):
            cs[2 * n] = f.coeffs[n]
    else:
        cs = np.zeros(M, dtype=np.int64)
        half = (M + 1) // 2
        cs[0 : 2 * half : 2] = f.coeffs[:half]
    return QExpansion(cs, f.weight, 2, f.p)


def ord_q(f: QExpansion) -> int:
    """Index of the first nonzero coefficient."""
    for n, c in enumerate(f.coeffs):
        if c:
            return n
    raise PrecisionError(f"expansion vanishes to precision {f.precision}")


# ---------------------------------------------------------------- classical forms


def _eta_cube_power8(M: int, p: int | None) -> list | np.ndarray:
    """prod_{n>=1} (1 - q^n)^24 to M terms, via Jacobi's identity for the cube."""
    cube = [0] * M
    m = 0
    while m * (m + 1) // 2 < M:
        cube[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    if p is None:
        x = cube
        for _ in range(3):
            x = _mul_exact(x, x, M)
        return x
    x = np.array(cube, dtype=np.int64) % p
    for _ in range(3):
        x = _mul_mod(x, x, M, p)
    return x


def delta_expansion(M: int, p: int | None = None) -> QExpansion:
    """q prod (1 - q^n)^24 to M terms (exact, or mod p when p is given)."""
    if M < 2:
        raise ValueError("precision must be at least 2")
    body = _eta_cube_power8(M - 1, p)
    if p is None:
        cs = [0] + list(body)
    else:
        cs = np.concatenate([[0], body])
    return QExpansion(cs, 12, 1, p)


def eisenstein_expansion(k: int, M: int, p: int | None = None) -> QExpansion:
    """E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n, k >= 4 even.

    Coefficients are exact rationals; pass p to reduce them.  Weight 2 is
    only quasi-modular and is rejected here (see :func:`m2_expansion`).
    """
    if k % 2 or k < 4:
        raise ValueError(f"need an even weight >= 4, got {k}")
    factor = Fraction(-2 * k) / bernoulli(k)
    sig = divisor_sums(k - 1, M)
    cs = [Fraction(1)] + [factor * sig[n] for n in range(1, M)]
    cs = [c.numerator if c.denominator == 1 else c for c in cs]
    f = QExpansion(cs, k, 1, None)
    return f.reduce(p) if p is not None else f


def _e2_coefficients(M: int) -> list[int]:
    sig = divisor_sums(1, M)
    return [1] + [-24 * sig[n] for n in range(1, M)]


def m2_expansion(M: int, p: int | None = None) -> QExpansion:
    """2 E_2(2 tau) - E_2(tau), the holomorphic weight-2 form on Gamma_0(2)."""
    e2 = _e2_coefficients(M)
    cs = [-c for c in e2]
    for n in range(0, (M + 1) // 2):
        cs[2 * n] += 2 * e2[n]
    f = QExpansion(cs, 2, 2, None)
    return f.reduce(p) if p is not None else f


# ---------------------------------------------------------------- L2 comparison


def default_epsilon(p: int, t: int) -> int:
    """2^(-6t) mod p."""
    return pow(pow(2, 6 * t, p), -1, p)


def l2_comparison_series(p: int, t: int, M: int, epsilon: int | None = None) -> QExpansion:
    """Delta(q^2)^t - epsilon * Delta(q)^t mod p, weight 12t, level 2.

    ``epsilon`` defaults to 2^(-6t) mod p.
    """
    if (12 * t) % (p - 1):
        raise ValueError(f"(p - 1) = {p - 1} does not divide 12t = {12 * t}")
    eps = default_epsilon(p, t) if epsilon is None else epsilon % p
    dt = delta_expansion(M, p) ** t
    g = v2(dt) - dt.scale(eps)
    return QExpansion(g.coeffs, 12 * t, 2, p)


# ---------------------------------------------------------------- linear algebra


def row_echelon_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    A = np.array(mat, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def residual_mod_p(rows: np.ndarray, pivots: Sequence[int], v: np.ndarray, p: int) -> np.ndarray:
    """v minus its projection onto the row space of a reduced echelon form."""
    v = np.asarray(v, dtype=np.int64) % p
    if not len(pivots):
        return v
    coeffs = v[list(pivots)]
    return (v - coeffs @ rows) % p


@dataclass(frozen=True)
class FormSpaceBasis:
    """Echelon basis of M_k(Gamma_0(2); F_p) truncated to M coefficients."""

    weight: int
    p: int
    precision: int
    rows: np.ndarray = field(repr=False)
    pivots: tuple[int, ...]
    level: int = 2

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def forms(self) -> list[QExpansion]:
        return [QExpansion(r, self.weight, self.level, self.p) for r in self.rows]

    def contains(self, f: QExpansion) -> bool:
        if f.precision < self.precision:
            raise PrecisionError("expansion shorter than the basis precision")
        r = residual_mod_p(self.rows, self.pivots, f.coeffs[: self.precision], self.p)
        return not r.any()


class _PowerTable:
    """Powers of M_2 and E_4 mod p; grown on demand, one writer at a time."""

    def __init__(self, p: int, M: int):
        self.p, self.M = p, M
        self._lock = threading.Lock()
        one = np.zeros(M, dtype=np.int64)
        one[0] = 1
        self._m2 = [one]
        self._e4 = [one]
        self._m2_base = m2_expansion(M, p).coeffs
        self._e4_base = eisenstein_expansion(4, M, p).coeffs

    def _grow(self, table, base, e):
        with self._lock:
            while len(table) <= e:
                table.append(_mul_mod(table[-1], base, self.M, self.p))

    def m2(self, a: int) -> np.ndarray:
        if a >= len(self._m2):
            self._grow(self._m2, self._m2_base, a)
        return self._m2[a]

    def e4(self, b: int) -> np.ndarray:
        if b >= len(self._e4):
            self._grow(self._e4, self._e4_base, b)
        return self._e4[b]


_tables: dict[tuple[int, int], _PowerTable] = {}
_tables_lock = threading.Lock()


def _power_table(p: int, M: int) -> _PowerTable:
    key = (p, M)
    tbl = _tables.get(key)
    if tbl is None:
        with _tables_lock:
            tbl = _tables.get(key)
            if tbl is None:
                tbl = _tables[key] = _PowerTable(p, M)
    return tbl


@lru_cache(maxsize=512)
def level2_basis(k: int, p: int, M: int) -> FormSpaceBasis:
    """Echelon basis spanned by M_2^a E_4^b (2a + 4b = k) mod p, to M terms."""
    if k < 0 or k % 2:
        raise ValueError(f"weight must be even and non-negative, got {k}")
    if M < k // 4 + 2:
        raise PrecisionError(f"precision {M} below the minimum {k // 4 + 2} for weight {k}")
    tbl = _power_table(p, M)
    rows = []
    for b in range(k // 4 + 1):
        a = (k - 4 * b) // 2
        rows.append(_mul_mod(tbl.m2(a), tbl.e4(b), M, p))
    ech, piv = row_echelon_mod_p(np.array(rows), p)
    if len(piv) != len(rows):
        raise PrecisionError(
            f"weight-{k} monomials are dependent mod {p} to precision {M}; raise the precision"
        )
    ech.setflags(write=False)
    return FormSpaceBasis(k, p, M, ech, tuple(piv))


def max_hasse_divisibility(g: QExpansion, p: int | None = None) -> int:
    """Largest j with A_p^j | g, for g of weight k on Gamma_0(2) mod p.

    Searches j downward from k // (p - 1) and returns the first j for which
    some form of weight k - j(p - 1) matches g to the Sturm precision.
    """
    p = g.p if p is None else p
    if g.p != p:
        raise ValueError("g must be reduced mod p")
    k = g.weight
    M = sturm_precision(k)
    if g.precision < M:
        raise PrecisionError(f"need {M} coefficients for weight {k}, have {g.precision}")
    if g.is_zero():
        raise PrecisionError("g vanishes to the working precision")
    target = g.truncate(M)
    for j in range(k // (p - 1), -1, -1):
        kk = k - j * (p - 1)
        if kk % 2:
            continue
        if level2_basis(kk, p, M).contains(target):
            return j
    raise ValueError(f"g is not congruent to any weight-{k} form on Gamma_0(2)")
