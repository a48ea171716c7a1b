"""
Run every check for a set of (p, i) pairs and report the results.

For each pair, with t = i(p^2 - 1)/12 and predicted order p^nu_p(t):

* lemma checks: Deuring/Hasse identity, point-count cross-check of the
  supersingular set, legs multipliers, v(delta) = 1, a Lucas-Kummer sample;
* lambda route: order of rho(s)^t - 1 at every supersingular lambda0;
* q route: largest j with A_p^j dividing Delta(q^2)^t - eps Delta(q)^t;
* (C1) Delta^t != 0 mod p and ord_q(Delta^t) = t.

Mismatches are collected as findings rather than raised.  Reports carry no
timestamps, so identical configurations serialize to identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import legendre as lg
from . import qforms as qf
from .errors import PrecisionError
from .ffield import FieldElement, construct_field, is_prime
from .lucas import kummer_oracle, nu_p, predicted_valuation
from .pseries import Indeterminate, TruncatedSeries

SCHEMA_VERSION = 1
ROUTES = ("lambda", "q", "both")

PASS, FAIL, PRECISION_FAILURE = "PASS", "FAIL", "PRECISION_FAILURE"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    primes: Sequence[int] = ()
    indices: Sequence[int] = ()
    routes: str = "both"
    precision_margin: int = 2
    q_ceiling: int = 2000
    lucas_samples: int = 20
    output: str | None = None
    fmt: str = "json"
    pairs: Sequence[tuple[int, int]] | None = None  # overrides primes x indices

    @property
    def tasks(self) -> list[tuple[int, int]]:
        if self.pairs is not None:
            return [(int(p), int(i)) for p, i in self.pairs]
        return [(p, i) for p in self.primes for i in self.indices]

    def validate(self) -> None:
        if self.routes not in ROUTES:
            raise ConfigError(f"routes must be one of {ROUTES}, got {self.routes!r}")
        if self.fmt not in ("json", "text"):
            raise ConfigError(f"format must be json or text, got {self.fmt!r}")
        if self.precision_margin < 1:
            raise ConfigError("precision margin must be at least 1")
        for p, i in self.tasks:
            if not is_prime(p) or p < 5:
                raise ConfigError(f"p must be a prime >= 5, got {p}")
            if i < 1:
                raise ConfigError(f"i must be positive, got {i}")
            if self.routes != "lambda":
                M = 3 * lg.t_from_index(p, i) + self.precision_margin
                if M > self.q_ceiling:
                    raise ConfigError(
                        f"q-route precision {M} for (p={p}, i={i}) exceeds the ceiling "
                        f"{self.q_ceiling}; raise --q-ceiling or use --routes lambda"
                    )

    @property
    def lambda_route(self) -> bool:
        return self.routes in ("lambda", "both")

    @property
    def q_route(self) -> bool:
        return self.routes in ("q", "both")


@dataclass
class VerificationReport:
    runs: list[dict[str, Any]] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @property
    def verdicts(self) -> list[str]:
        return [r["verdict"] for r in self.runs]

    @property
    def exit_code(self) -> int:
        if FAIL in self.verdicts:
            return 1
        if PRECISION_FAILURE in self.verdicts:
            return 2
        return 0

    def to_dict(self) -> dict[str, Any]:
        return {"schema_version": self.schema_version, "runs": self.runs}


def _elem(x: FieldElement) -> list[int]:
    return list(x.coeffs)


def _val(v) -> Any:
    return str(v) if isinstance(v, Indeterminate) else v


def _split_index(i: int, p: int) -> tuple[int, int]:
    n = 0
    while i % p == 0:
        i //= p
        n += 1
    return i, n


def _lucas_sample(p: int, t: int, samples: int, rng: random.Random) -> bool:
    F = construct_field(p, 1)
    n = predicted_valuation(t, p) + 2
    for _ in range(samples):
        coeffs = [0, rng.randrange(1, p)] + [rng.randrange(p) for _ in range(n - 2)]
        delta = TruncatedSeries(F, coeffs, n)
        if kummer_oracle(t, p, delta, n) != predicted_valuation(t, p):
            return False
    return True


@dataclass
class _PrimeChecks:
    deuring_sign: int | None
    deuring_identity: bool
    supersingular_crosscheck: bool
    legs: dict


_prime_cache: dict[int, _PrimeChecks] = {}


def _prime_checks(p: int) -> _PrimeChecks:
    """Checks that depend on p only."""
    if p in _prime_cache:
        return _prime_cache[p]
    try:
        sign = lg.deuring_sign(p)
        identity = True
    except AssertionError:
        sign, identity = None, False
    points = lg.supersingular_points(p)
    F2 = construct_field(p, 2)
    by_count = {x for x in F2.elements() if x != 0 and x != 1 and lg.supersingular_oracle(x)}
    crosscheck = by_count == {P.lambda0 for P in points}
    legs = {P: lg.legs_multipliers(P) for P in points}
    out = _PrimeChecks(sign, identity, crosscheck, legs)
    _prime_cache[p] = out
    return out


def _ramification_index(P: lg.SupersingularPoint) -> int:
    """Index of X(2) -> X_0(2) at lambda0: 2 at the fixed point lambda0 = -1."""
    lam = P.lambda0
    return 2 if lam * lam == 1 else 1


def _run_one(cfg: RunConfig, p: int, i: int) -> dict[str, Any]:
    t = lg.t_from_index(p, i)
    nu = nu_p(t, p)
    predicted = predicted_valuation(t, p)
    r, n = _split_index(i, p)
    findings: list[dict[str, Any]] = []
    failures, precision_failures = [], []

    pc = _prime_checks(p)
    if not pc.deuring_identity:
        failures.append("deuring_identity")
    if not pc.supersingular_crosscheck:
        failures.append("supersingular_crosscheck")

    rng = random.Random(f"lucas:{p}:{i}")
    lucas_ok = _lucas_sample(p, t, cfg.lucas_samples, rng)
    if not lucas_ok:
        failures.append("lucas_kummer_sample")

    modulus = list(construct_field(p, 2).modulus)
    points_out = []
    lambda_vals = []
    for P in lg.supersingular_points(p):
        legs = pc.legs[P]
        dv = lg.delta_valuation(P)
        row: dict[str, Any] = {
            "lambda0": list(P.key),
            "modulus": modulus,
            "valuation": None,
            "c": _elem(legs.c),
            "c_dual": _elem(legs.c_dual),
            "c_modulus": list(legs.c.field.modulus),
            "c_in_Fp": legs.c_in_prime_field,
            "c_times_c_dual_is_one": legs.product == 1,
            "dual_branch_ambiguous": legs.dual_branch_ambiguous,
            "delta_valuation": _val(dv),
            "rho0_pow_t_is_one": None,
            "ramification_index": _ramification_index(P),
        }
        if legs.c == 0 or legs.product != 1:
            failures.append("legs_multipliers")
        if dv != 1:
            failures.append("delta_valuation")
            findings.append({
                "kind": "delta_order_exceeds_one",
                "lambda0": list(P.key),
                "detail": f"v(rho/rho(0) - 1) = {_val(dv)}",
            })
        if not legs.c_in_prime_field:
            findings.append({
                "kind": "c_not_in_Fp",
                "lambda0": list(P.key),
                "detail": "first-order multiplier lies outside the prime field",
            })
        if legs.dual_branch_ambiguous:
            findings.append({
                "kind": "dual_branch_ambiguous",
                "lambda0": list(P.key),
                "detail": "both dual branches start at lambda0; chosen by first-order matching",
            })

        if cfg.lambda_route:
            order = lg.local_l2_order(P, t, predicted + cfg.precision_margin)
            v = order.valuation
            row["valuation"] = _val(v)
            row["rho0_pow_t_is_one"] = order.rho0_pow_t_is_one
            if not order.rho0_pow_t_is_one:
                findings.append({
                    "kind": "rho0_pow_t_not_one",
                    "lambda0": list(P.key),
                    "detail": f"rho(0)^t = {_elem(order.rho0_pow_t)}; normalized series used",
                })
            if isinstance(v, Indeterminate):
                wide = lg.local_l2_order(P, t, 4 * predicted + 2).valuation
                row["valuation_extended"] = _val(wide)
                if isinstance(wide, int) and wide != predicted:
                    failures.append("lambda_route")
                else:
                    precision_failures.append("lambda_route")
                findings.append({
                    "kind": "precision_failure",
                    "lambda0": list(P.key),
                    "detail": f"order {v} at precision {order.precision}; "
                    f"order {_val(wide)} at precision {4 * predicted + 2}",
                })
                v = wide
            elif v != predicted:
                failures.append("lambda_route")
            if isinstance(v, int):
                lambda_vals.append(v)
                e = row["ramification_index"]
                row["x0_2_valuation"] = v // e if v % e == 0 else v / e
                if v != predicted:
                    findings.append({
                        "kind": "valuation_mismatch",
                        "lambda0": list(P.key),
                        "detail": f"order {v} != predicted {predicted}; ramification index "
                        f"of X(2) -> X_0(2) here is {e}, order on X_0(2) is {row['x0_2_valuation']}",
                    })
        points_out.append(row)

    M = 3 * t + cfg.precision_margin
    dt = qf.delta_expansion(max(M, t + 2), p) ** t
    c1_pass = not dt.is_zero()
    try:
        ordq = qf.ord_q(dt)
    except PrecisionError:
        ordq = None
    if not c1_pass:
        failures.append("c1")
    if ordq != t:
        failures.append("c2_order")

    q_out = None
    if cfg.q_route:
        eps = qf.default_epsilon(p, t)
        g = qf.l2_comparison_series(p, t, M, eps)
        j_max = qf.max_hasse_divisibility(g)
        retried = False
        if j_max == 0:
            alt = qf.max_hasse_divisibility(qf.l2_comparison_series(p, t, M, -eps))
            if alt > 0:
                eps, j_max, retried = (-eps) % p, alt, True
                findings.append({
                    "kind": "epsilon_sign",
                    "detail": f"2^(-6t) did not vanish on the supersingular locus; -eps = {eps} did",
                })
        q_out = {
            "j_max": j_max,
            "epsilon": eps,
            "epsilon_retried": retried,
            "sturm_precision": qf.sturm_precision(12 * t),
            "working_precision": M,
        }
        if j_max != predicted:
            failures.append("q_route")
        if cfg.lambda_route and lambda_vals and min(lambda_vals) != j_max:
            findings.append({
                "kind": "route_disagreement",
                "detail": f"lambda-route minimum {min(lambda_vals)} vs q-route j_max {j_max}",
            })

    if failures:
        verdict = FAIL
    elif precision_failures:
        verdict = PRECISION_FAILURE
    else:
        verdict = PASS

    return {
        "p": p,
        "i": i,
        "r": r,
        "n": n,
        "t": t,
        "nu": nu,
        "predicted_order": predicted,
        "lambda_precision": predicted + cfg.precision_margin if cfg.lambda_route else None,
        "points": points_out,
        "q_route": q_out,
        "checks": {
            "deuring_identity": pc.deuring_identity,
            "deuring_sign": pc.deuring_sign,
            "supersingular_crosscheck": pc.supersingular_crosscheck,
            "lucas_kummer_sample": lucas_ok,
        },
        "c1_pass": c1_pass,
        "ordq_delta_t": ordq,
        "verdict": verdict,
        "failed_checks": sorted(set(failures)),
        "findings": findings,
    }


def run_verification(cfg: RunConfig) -> VerificationReport:
    cfg.validate()
    report = VerificationReport()
    for p, i in cfg.tasks:
        report.runs.append(_run_one(cfg, p, i))
    return report


def _fmt_elem(coeffs) -> str:
    return "(" + ",".join(str(c) for c in coeffs) + ")"


def _text(report: VerificationReport) -> str:
    lines = [f"schema_version {report.schema_version}, {len(report.runs)} run(s)"]
    for run in report.runs:
        lines.append("")
        lines.append(
            f"p = {run['p']}, i = {run['i']} (r = {run['r']}, n = {run['n']}), "
            f"t = {run['t']}, predicted order p^nu = {run['predicted_order']}"
        )
        header = ("lambda0", "order", "c", "c_dual", "c in F_p", "rho0^t=1", "v(delta)", "e")
        rows = [header]
        for pt in run["points"]:
            rows.append((
                _fmt_elem(pt["lambda0"]),
                str(pt["valuation"]),
                _fmt_elem(pt["c"]),
                _fmt_elem(pt["c_dual"]),
                "yes" if pt["c_in_Fp"] else "no",
                str(pt["rho0_pow_t_is_one"]),
                str(pt["delta_valuation"]),
                str(pt["ramification_index"]),
            ))
        widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
        for r in rows:
            lines.append("  " + "  ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip())
        q = run["q_route"]
        if q is not None:
            lines.append(
                f"  q-route: j_max = {q['j_max']}, epsilon = {q['epsilon']}, "
                f"Sturm precision = {q['sturm_precision']}"
            )
        lines.append(f"  (C1) {run['c1_pass']}, ord_q(Delta^t) = {run['ordq_delta_t']}")
        for f in run["findings"]:
            where = f" at {_fmt_elem(f['lambda0'])}" if "lambda0" in f else ""
            lines.append(f"  finding {f['kind']}{where}: {f['detail']}")
        failed = ", ".join(run["failed_checks"])
        lines.append(f"  verdict: {run['verdict']}" + (f" ({failed})" if failed else ""))
    return "\n".join(lines) + "\n"


def emit_report(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "text":
        return _text(report)
    raise ValueError(f"unknown format {fmt!r}")


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _pair_list(s: str) -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in item.split(":")) for item in s.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p:i pairs, got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="verify",
        description="Check the supersingular order of L2(Delta^t) by the lambda and q routes.",
    )
    ap.add_argument("--p", type=_int_list, default=[], help="primes, e.g. 11,13")
    ap.add_argument("--i", type=_int_list, default=[], help="indices i, e.g. 1,11")
    ap.add_argument(
        "--pairs", type=_pair_list, default=None, help="explicit p:i pairs, e.g. 5:1,11:11"
    )
    ap.add_argument("--routes", choices=ROUTES, default="both")
    ap.add_argument("--format", choices=("json", "text"), default="json", dest="fmt")
    ap.add_argument("--out", default=None, help="write the report here instead of stdout")
    ap.add_argument("--precision-margin", type=int, default=2)
    ap.add_argument("--q-ceiling", type=int, default=2000)
    ap.add_argument("--lucas-samples", type=int, default=20)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        primes=args.p,
        indices=args.i,
        routes=args.routes,
        precision_margin=args.precision_margin,
        q_ceiling=args.q_ceiling,
        lucas_samples=args.lucas_samples,
        output=args.out,
        fmt=args.fmt,
        pairs=args.pairs,
    )
    try:
        report = run_verification(cfg)
    except ConfigError as exc:
        print(f"verify: configuration error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(report, cfg.fmt)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
