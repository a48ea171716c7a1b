"""Acceptance criteria, each run at its stated tolerance (exact).

Every test records one PASS/FAIL line, printed again in the terminal summary.
"""

import json
import math
import random
import subprocess
import sys
import time

import pytest

from ssorder.ffield import construct_field
from ssorder.legendre import (
    deuring_polynomial,
    hasse_coefficient_polynomial,
    l2_local_valuation,
    leg_ratio_series,
    legs_multipliers,
    supersingular_oracle,
    supersingular_points,
    t_from_index,
)
from ssorder.lucas import kummer_oracle, lucas_binom, predicted_valuation
from ssorder.pseries import TruncatedSeries
from ssorder.qforms import (
    delta_expansion,
    eisenstein_expansion,
    l2_comparison_series,
    max_hasse_divisibility,
    ord_q,
)

LAMBDA_PAIRS = [(5, 1), (5, 2), (5, 5), (5, 25), (7, 1), (7, 7), (11, 1), (11, 2), (11, 11), (13, 1), (13, 13)]
Q_PAIRS = [(5, 1), (5, 5), (7, 1), (11, 1), (13, 1), (11, 11)]


def test_criterion_1_deuring_identity(record):
    bad = []
    for p in (5, 7, 11, 13, 17, 19):
        A, H = hasse_coefficient_polynomial(p), deuring_polynomial(p)
        if not (A == H or A == -H):
            bad.append(p)
    record(1, not bad, f"Hasse coefficient = +-H_p for p in 5..19; mismatches {bad}")
    assert not bad


def test_criterion_2_supersingular_cross_check(record):
    bad = []
    for p in (5, 7, 11):
        F2 = construct_field(p, 2)
        by_count = {x for x in F2.elements() if x != 0 and x != 1 and supersingular_oracle(x)}
        if by_count != {P.lambda0 for P in supersingular_points(p)}:
            bad.append(p)
    h11_at_minus_one = deuring_polynomial(11)(construct_field(11, 1)(-1))
    ok = not bad and h11_at_minus_one == 0
    record(2, ok, f"roots of H_p = point-count set for p in 5, 7, 11; H_11(-1) = {h11_at_minus_one}")
    assert ok


def test_criterion_3_hasse_q_expansion(record):
    bad = [p for p in (5, 7, 11, 13) if eisenstein_expansion(p - 1, 50, p).to_list() != [1] + [0] * 49]
    record(3, not bad, f"E_(p-1) = 1 mod p to 50 terms; mismatches {bad}")
    assert not bad


def test_criterion_4_lucas_kummer(record):
    bad = []
    for p in (5, 7, 11, 13):
        F = construct_field(p, 1)
        rng = random.Random(f"acceptance-4-{p}")
        for _ in range(200):
            t = rng.randint(1, 10**4)
            n = predicted_valuation(t, p) + 2
            delta = TruncatedSeries(F, [0, rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 2)])
            if kummer_oracle(t, p, delta) != predicted_valuation(t, p):
                bad.append((p, t))
    sweep_bad = [
        (p, t, m)
        for p in (5, 7, 11, 13)
        for t in range(201)
        for m in range(t + 1)
        if lucas_binom(t, m, p) != math.comb(t, m) % p
    ]
    ok = not bad and not sweep_bad
    record(4, ok, f"800 random (t, delta) pairs and the t <= 200 sweep; mismatches {bad + sweep_bad}")
    assert ok


def test_criterion_5_lambda_route(record):
    bad, timings = [], {}
    for p, i in LAMBDA_PAIRS:
        t = t_from_index(p, i)
        start = time.perf_counter()
        vals = l2_local_valuation(p, i)
        timings[(p, i)] = time.perf_counter() - start
        expected = predicted_valuation(t, p)
        for P, v in vals.items():
            if v != expected:
                bad.append(((p, i), list(P.key), str(v), expected))
    slow = timings[(5, 25)]
    ok = not bad and slow < 60
    record(5, ok, f"order p^nu at every point; (5,25) took {slow:.1f}s; mismatches (pair, lambda0, got, want) {bad}")
    assert ok


@pytest.mark.slow
def test_criterion_6_q_route(record):
    bad, eps = [], {}
    for p, i in Q_PAIRS:
        t = t_from_index(p, i)
        g = l2_comparison_series(p, t, 3 * t + 2)
        eps[(p, i)] = pow(pow(2, 6 * t, p), -1, p)
        j = max_hasse_divisibility(g)
        if j != predicted_valuation(t, p):
            bad.append(((p, i), j))
    record(6, not bad, f"j_max = p^nu; epsilon used {sorted(set(eps.values()))}; mismatches {bad}")
    assert not bad


def test_criterion_7_legs_lemma(record):
    bad_c, bad_delta, not_fp = [], [], 0
    for p in (5, 7, 11, 13):
        for P in supersingular_points(p):
            legs = legs_multipliers(P)
            if legs.c == 0 or legs.product != 1:
                bad_c.append((p, list(P.key)))
            not_fp += not legs.c_in_prime_field
            rho = leg_ratio_series(P, 4)
            v = (rho / rho[0] - 1).valuation()
            if v != 1:
                bad_delta.append((p, list(P.key), str(v)))
    ok = not bad_c and not bad_delta
    record(
        7,
        ok,
        f"c * c_dual = 1, c != 0 (mismatches {bad_c}); v(delta) = 1 (mismatches {bad_delta}); "
        f"c outside F_p at {not_fp} points",
    )
    assert ok


def test_criterion_8_c1_and_order(record):
    bad = []
    for p, i in sorted(set(LAMBDA_PAIRS) | set(Q_PAIRS)):
        t = t_from_index(p, i)
        dt = delta_expansion(t + 2, p) ** t
        if dt.is_zero() or ord_q(dt) != t:
            bad.append((p, i))
    record(8, not bad, f"Delta^t != 0 mod p and ord_q = t; mismatches {bad}")
    assert not bad


def _cli_report(tmp_path, name, pairs, routes):
    out = tmp_path / name
    spec = ",".join(f"{p}:{i}" for p, i in pairs)
    subprocess.run(
        [sys.executable, "-m", "ssorder", "--pairs", spec, "--routes", routes, "--out", str(out)],
        check=False,
        capture_output=True,
    )
    return out.read_bytes()


@pytest.mark.slow
def test_criterion_9_determinism(tmp_path, record):
    runs = [(LAMBDA_PAIRS, "lambda"), (Q_PAIRS, "both")]
    same = []
    for k, (pairs, routes) in enumerate(runs):
        a = _cli_report(tmp_path, f"a{k}.json", pairs, routes)
        b = _cli_report(tmp_path, f"b{k}.json", pairs, routes)
        json.loads(a)
        same.append(a == b and len(a) > 0)
    ok = all(same)
    record(9, ok, f"two fresh-process runs of each suite configuration are byte-identical: {same}")
    assert ok
