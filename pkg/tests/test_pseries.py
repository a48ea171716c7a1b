import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssorder.errors import FieldMismatchError
from ssorder.ffield import construct_field
from ssorder.pseries import (
    Indeterminate,
    TruncatedSeries,
    series_compose,
    series_pow,
    series_reverse,
    series_sqrt,
    series_valuation,
)

F5 = construct_field(5, 1)
F7 = construct_field(7, 1)


def naive_mul(a, b, n, p):
    """Schoolbook product of integer coefficient lists mod p, truncated to n."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def ints(s):
    return [c.coeffs[0] for c in s.coeffs]


def series(F, cs, n=None):
    return TruncatedSeries(F, cs, n)


def unit_series(p, n, lead=1):
    return st.lists(st.integers(0, p - 1), min_size=n - 1, max_size=n - 1).map(
        lambda tail: series(construct_field(p, 1), [lead] + tail)
    )


# ---------------------------------------------------------------- series_pow


def test_pow_freshmans_dream():
    s = series(F5, [1, 1], 12)
    oracle = [1] + [0] * 11
    for _ in range(10):
        oracle = naive_mul(oracle, [1, 1], 12, 5)
    assert ints(series_pow(s, 10)) == oracle
    assert oracle == [1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1, 0]


def test_pow_identity_exponent():
    s = series(F5, [1, 1], 6)
    assert series_pow(s, 1) == s


def test_pow_seventh_power():
    s = series(F7, [1, 1, 1], 16)
    oracle = [1] + [0] * 15
    for _ in range(7):
        oracle = naive_mul(oracle, [1, 1, 1], 16, 7)
    got = ints(series_pow(s, 7))
    assert got == oracle
    assert [k for k, c in enumerate(got) if c] == [0, 7, 14]


@pytest.mark.parametrize("cs,t", [([2, 1], 3), ([0, 1], 2), ([1, 1], 0)])
def test_pow_rejects_bad_input(cs, t):
    with pytest.raises(ValueError):
        series_pow(series(F5, cs, 4), t)


@settings(max_examples=30, deadline=None)
@given(s=unit_series(7, 10), t=st.integers(1, 60), t2=st.integers(1, 60))
def test_pow_is_additive_in_exponent(s, t, t2):
    assert series_pow(s, t) * series_pow(s, t2) == series_pow(s, t + t2)


# ---------------------------------------------------------------- composition


def test_compose_linear():
    c = F5(3)
    f = series(F5, [1, 1], 5)
    g = series(F5, [0, c], 5)
    assert ints(series_compose(f, g)) == [1, 3, 0, 0, 0]


def test_compose_with_identity():
    rng = random.Random(2)
    f = series(F5, [rng.randrange(5) for _ in range(7)])
    assert series_compose(f, TruncatedSeries.gen(F5, 7)) == f


def test_compose_by_direct_substitution():
    # oracle: 1 + g + g^2 with g = 2u + u^2, expanded by schoolbook products
    n = 6
    g = [0, 2, 1, 0, 0, 0]
    g2 = naive_mul(g, g, n, 5)
    oracle = [(int(k == 0) + g[k] + g2[k]) % 5 for k in range(n)]
    f = series(F5, [1, 1, 1, 0, 0, 0])
    got = series_compose(f, series(F5, g))
    assert ints(got) == oracle
    assert oracle[:5] == [1, 2, 0, 4, 1]


def test_compose_precision_accounting():
    f = series(F5, [1, 1, 1], 3)
    g = series(F5, [0, 0, 1], 10)  # v(g) = 2, so precision min(2 * 3, 10)
    assert series_compose(f, g).prec == 6


def test_compose_rejects_unit_inner():
    with pytest.raises(ValueError):
        series_compose(series(F5, [1, 1]), series(F5, [1, 1]))


@settings(max_examples=25, deadline=None)
@given(
    f=st.lists(st.integers(0, 4), min_size=6, max_size=6),
    g=st.lists(st.integers(0, 4), min_size=5, max_size=5),
    h=st.lists(st.integers(0, 4), min_size=5, max_size=5),
)
def test_compose_is_associative(f, g, h):
    f = series(F5, f)
    g = series(F5, [0] + g)
    h = series(F5, [0] + h)
    left = series_compose(series_compose(f, g), h)
    right = series_compose(f, series_compose(g, h))
    n = min(left.prec, right.prec)
    assert left.truncate(n) == right.truncate(n)


def test_reverse_is_compositional_inverse():
    g = series(F7, [0, 3, 1, 5, 2, 0, 6, 1])
    h = series_reverse(g)
    assert series_compose(g, h) == TruncatedSeries.gen(F7, 8)
    assert series_compose(h, g) == TruncatedSeries.gen(F7, 8)


# ---------------------------------------------------------------- square roots


def test_sqrt_of_one():
    assert ints(series_sqrt(series(F5, [1], 4))) == [1, 0, 0, 0]


def test_sqrt_newton_then_square():
    s = series(F5, [1, 2], 3)
    r = series_sqrt(s)
    assert r * r == s
    assert r[0] == 1


def test_sqrt_of_constant_uses_first_root():
    r = series_sqrt(series(F5, [4], 1))
    assert r[0] == 2 and r[0] * r[0] == 4


@pytest.mark.parametrize("cs", [[0, 1], [2, 1]])
def test_sqrt_rejects(cs):
    with pytest.raises(ValueError):
        series_sqrt(series(F5, cs, 3))


@settings(max_examples=30, deadline=None)
@given(s=unit_series(13, 12, lead=9))
def test_sqrt_squares_back(s):
    r = series_sqrt(s)
    assert r * r == s


def test_sqrt_in_extension_field():
    F = construct_field(7, 2)
    s = TruncatedSeries(F, [F.gen, F([1, 1]), 3], 8)
    s2 = s * s
    r = series_sqrt(s2)
    assert r * r == s2


# ---------------------------------------------------------------- valuation


def test_valuation_examples():
    assert series_valuation(series(F5, [0, 0, 0, 0, 0, 2, 0, 1])) == 5
    z = series(F5, [0] * 9)
    v = series_valuation(z)
    assert isinstance(v, Indeterminate) and v.bound == 9 and str(v) == ">=9"
    s = series_pow(series(F5, [1, 1], 12), 10) - 1
    assert series_valuation(s) == 5


@settings(max_examples=40, deadline=None)
@given(
    a=st.lists(st.integers(0, 6), min_size=12, max_size=12),
    b=st.lists(st.integers(0, 6), min_size=12, max_size=12),
)
def test_valuation_is_additive(a, b):
    f, g = series(F7, a), series(F7, b)
    vf, vg = f.valuation(), g.valuation()
    if isinstance(vf, Indeterminate) or isinstance(vg, Indeterminate) or vf + vg >= 12:
        return
    assert (f * g).valuation() == vf + vg


# ---------------------------------------------------------------- ring plumbing


def test_product_precision():
    f = series(F5, [0, 0, 1], 5)  # v = 2, N = 5
    g = series(F5, [0, 0, 0, 1], 5)  # v = 3, N = 5
    assert (f * g).prec == 7  # min(5 + 3, 5 + 2)


def test_inverse():
    s = series(F7, [3, 1, 4, 1, 5])
    assert s * s.inverse() == series(F7, [1], 5)
    with pytest.raises(ZeroDivisionError):
        series(F7, [0, 1]).inverse()


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        series(F5, [1, 1]) + series(F7, [1, 1])


def test_change_field_embeds_coefficients():
    F25 = construct_field(5, 2)
    s = series(F5, [1, 2, 3]).change_field(F25)
    assert s.field == F25 and s[1] == F25(2)
