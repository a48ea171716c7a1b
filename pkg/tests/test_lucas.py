import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssorder.errors import PrecisionError
from ssorder.ffield import construct_field
from ssorder.lucas import (
    BaseP,
    kummer_oracle,
    lucas_binom,
    lucas_witness,
    nu_p,
    predicted_valuation,
)
from ssorder.pseries import TruncatedSeries


@given(n=st.integers(0, 10**9), p=st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_digits_round_trip(n, p):
    b = BaseP(n, p)
    assert b.value() == n
    assert all(0 <= d < p for d in b.digits)


def test_negative_rejected():
    with pytest.raises(ValueError):
        BaseP(-1, 5)


@pytest.mark.parametrize("t,p,nu", [(10, 5, 1), (182, 13, 1), (14, 13, 0), (50, 5, 2)])
def test_nu_p(t, p, nu):
    assert nu_p(t, p) == nu


def test_nu_p_of_zero_rejected():
    with pytest.raises(ValueError):
        nu_p(0, 5)


def test_lucas_examples():
    assert math.comb(10, 5) % 5 == 2
    assert lucas_binom(10, 5, 5) == 2
    assert lucas_binom(17, 0, 5) == 1
    assert lucas_binom(10, 3, 5) == 0


def test_lucas_rejects_out_of_range():
    with pytest.raises(ValueError):
        lucas_binom(3, 4, 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_lucas_matches_factorials_full_sweep(p):
    for t in range(201):
        for m in range(t + 1):
            assert lucas_binom(t, m, p) == math.comb(t, m) % p


@pytest.mark.parametrize("p", [5, 7])
def test_nonvanishing_iff_digits_dominated(p):
    for t in range(150):
        td = BaseP(t, p).digits
        for m in range(t + 1):
            md = BaseP(m, p).digits + (0,) * len(td)
            dominated = all(a <= b for a, b in zip(md, td))
            assert (lucas_binom(t, m, p) != 0) == dominated


@pytest.mark.parametrize("t,p,expected", [(10, 5, 5), (7, 5, 1), (50, 5, 25)])
def test_predicted_valuation(t, p, expected):
    assert predicted_valuation(t, p) == expected
    assert lucas_witness(t, p) == expected


def test_predicted_valuation_rejects_nonpositive():
    with pytest.raises(ValueError):
        predicted_valuation(0, 5)


def test_kummer_oracle_examples():
    F5, F13, F11 = (construct_field(p, 1) for p in (5, 13, 11))
    assert kummer_oracle(10, 5, TruncatedSeries(F5, [0, 1], 7)) == 5
    assert kummer_oracle(14, 13, TruncatedSeries(F13, [0, 3, 1], 3)) == 1
    rng = random.Random(55)
    delta = TruncatedSeries(F11, [0, rng.randrange(1, 11)] + [rng.randrange(11) for _ in range(11)])
    assert kummer_oracle(55, 11, delta) == 11


def test_kummer_oracle_refuses_to_invent_precision():
    F5 = construct_field(5, 1)
    with pytest.raises(PrecisionError):
        kummer_oracle(10, 5, TruncatedSeries(F5, [0, 1], 4))


def test_kummer_oracle_requires_simple_zero():
    F5 = construct_field(5, 1)
    with pytest.raises(ValueError):
        kummer_oracle(10, 5, TruncatedSeries(F5, [0, 0, 1], 8))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_prediction_matches_expansion_random(p):
    rng = random.Random(f"kummer-{p}")
    F = construct_field(p, 1)
    for _ in range(25):
        t = rng.randrange(1, 2000)
        n = predicted_valuation(t, p) + 2
        delta = TruncatedSeries(F, [0, rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 2)])
        assert kummer_oracle(t, p, delta) == predicted_valuation(t, p)
