"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import io
import json
import math
import random
import time

import pytest

from itercalc.cli import run_command
from itercalc.ncalgebra import NcPoly, is_admissible, word
from itercalc.numeric import LEvaluator, check_diff_formula, check_relation_numeric, eval_L
from itercalc.parsing import format_expr, parse_expr
from itercalc.products import all_words
from itercalc.ratfield import ONE, Z, ZERO, GradingMap, RatFun
from itercalc.verify import (
    sweep_lift_f,
    sweep_specialization,
    sweep_stuffle_laws,
    sweep_stuffle_paths,
    sweep_thm32,
    sweep_thm44,
    sweep_thm51,
    sweep_thm61,
)

RESULTS: list[str] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _sweep_line(rep, elapsed: float) -> str:
    extra = "".join(f", {k}={v}" for k, v in rep.counters.items() if not isinstance(v, str))
    return f"{rep.theorem}: {len(rep.reports)} cases, {len(rep.failures)} nonzero residuals{extra}, {elapsed:.1f}s"


def test_criterion_01_shuffle_derivation():
    t0 = time.perf_counter()
    rep = sweep_thm32(6)
    dt = time.perf_counter() - t0
    record(1, rep.passed and dt <= 120, _sweep_line(rep, dt))


def test_criterion_02_stuffle_derivation():
    t0 = time.perf_counter()
    rep = sweep_thm44(6)
    dt = time.perf_counter() - t0
    ok = rep.passed and rep.counters["lambda_nontrivial"] > 0
    record(2, ok, _sweep_line(rep, dt) + f"; e.g. {rep.counters.get('lambda_example')}")


def test_criterion_03_stuffle_laws():
    t0 = time.perf_counter()
    rep = sweep_stuffle_laws(max_degree=6, n_assoc=200, n_embed=200, seed=0)
    dt = time.perf_counter() - t0
    kinds = {}
    for r in rep.reports:
        kinds[r.theorem] = kinds.get(r.theorem, 0) + 1
    ok = rep.passed and kinds["stuffle-associative"] >= 200 and kinds["embedding"] >= 200
    record(3, ok, _sweep_line(rep, dt) + f" {kinds}")


def test_criterion_04_stuffle_paths():
    t0 = time.perf_counter()
    rep = sweep_stuffle_paths(7)
    dt = time.perf_counter() - t0
    record(4, rep.passed, _sweep_line(rep, dt))


def test_criterion_05_lift_f():
    t0 = time.perf_counter()
    rep = sweep_lift_f(max_len=5, n_f=100, seed=0, gradings=(GradingMap.at(0), GradingMap.infinity()))
    dt = time.perf_counter() - t0
    record(5, rep.passed, _sweep_line(rep, dt))


def test_criterion_06_mobius():
    t0 = time.perf_counter()
    rep = sweep_thm51(max_degree=4, seed=0)
    dt = time.perf_counter() - t0
    record(6, rep.passed, _sweep_line(rep, dt))


def test_criterion_07_duality_sweep():
    t0 = time.perf_counter()
    rep = sweep_thm61(5)
    dt = time.perf_counter() - t0
    ok = rep.passed and rep.counters["subspace_cases"] > 0 and rep.counters["violations"] == 0
    record(7, ok, _sweep_line(rep, dt))


def test_criterion_08_specialization():
    t0 = time.perf_counter()
    rep = sweep_specialization(6)
    dt = time.perf_counter() - t0
    record(8, rep.passed, _sweep_line(rep, dt))


def _zeta2() -> float:
    n = 20_000
    return sum(1 / k**2 for k in range(1, n + 1)) + 1 / n - 1 / (2 * n**2) + 1 / (6 * n**3)


def _alt_half_zeta2() -> float:
    n = 200_000
    return sum((-1) ** (k + 1) / k**2 for k in range(1, n + 1)) + (-1) ** n / (2 * (n + 1) ** 2)


def test_criterion_09_spot_values():
    checks = [
        ("L(e1e0)", eval_L(word(1, 0), 0, 1e-8).value, -_zeta2(), 1e-6),
        ("L(eze0)|z=-1", eval_L(word(Z, 0), -1, 1e-8).value, _alt_half_zeta2(), 1e-6),
        ("L(ez)|z=-1", eval_L(word(Z), -1, 1e-10).value, math.log(2), 1e-8),
    ]
    errs = [(name, abs(got - want), tol) for name, got, want, tol in checks]
    ok = all(err <= tol for _, err, tol in errs)
    record(9, ok, ", ".join(f"{name} err {err:.1e} (tol {tol:g})" for name, err, tol in errs))


def test_criterion_10_numeric_relations():
    t0 = time.perf_counter()
    adm = [w for w in all_words((ZERO, ONE, Z), 4) if is_admissible(w, ZERO, ONE)]
    adm01 = {w for w in adm if Z not in w}
    L = LEvaluator(tol=1e-12)
    worst: dict[str, float] = {}
    counts: dict[str, int] = {}
    failures = []
    for z0 in (-1, -2, 0.5 + 0.5j):
        reports = []
        for u in adm:
            for v in adm:
                if len(u) + len(v) <= 4:
                    pu, pv = NcPoly.monomial(u), NcPoly.monomial(v)
                    reports.append(check_relation_numeric("shuffle", pu, pv, z0, 1e-5, L))
                    if u in adm01:
                        reports.append(check_relation_numeric("stuffle", pu, pv, z0, 1e-5, L))
        for w in adm:
            if len(w) <= 3:
                reports.append(check_relation_numeric("duality", NcPoly.monomial(w), None, z0, 1e-5, L))
                reports.append(check_diff_formula(NcPoly.monomial(w), z0, 1e-4, 1e-3, L))
        for r in reports:
            worst[r.kind] = max(worst.get(r.kind, 0.0), r.error)
            counts[r.kind] = counts.get(r.kind, 0) + 1
            if not r.passed:
                failures.append((r.kind, z0, r.error))
    dt = time.perf_counter() - t0
    detail = ", ".join(f"{k} {counts[k]} max err {worst[k]:.1e}" for k in counts)
    record(10, not failures and dt <= 600, f"{detail}, {dt:.1f}s")


def _random_expr(rng: random.Random) -> NcPoly:
    pool = [ZERO, ONE, Z, -Z, RatFun((-1, 1), (0, 1)), RatFun((1,), (1, 0, 1)), RatFun.const(-2), Z * Z]
    terms: dict = {}
    for _ in range(rng.randint(0, 5)):
        w = tuple(rng.choice(pool) for _ in range(rng.randint(0, 4)))
        terms[w] = terms.get(w, 0) + rng.randint(-12, 12)
    return NcPoly(terms)


def test_criterion_11_cli():
    rng = random.Random(11)
    bad = 0
    for _ in range(1000):
        a = _random_expr(rng)
        bad += parse_expr(format_expr(a)) != a

    def code(*argv):
        return run_command(list(argv), io.StringIO(), io.StringIO())

    out = io.StringIO()
    ok_code = run_command(["verify", "--theorem", "4.4", "--max-degree", "4", "--json"], out, io.StringIO())
    body = json.loads(out.getvalue())
    usage_code = code("verify", "--theorem", "4.4")
    bad_theorem = code("verify", "--theorem", "7.7", "--max-degree", "2")

    import itercalc.cli as cli
    from itercalc.verify import ResidualReport, SweepReport

    saved = cli.run_theorem
    cli.run_theorem = lambda *a, **k: SweepReport("3.2", {}, [ResidualReport("3.2", "", parse_expr("e[1]"))])
    try:
        fail_code = code("verify", "--theorem", "3.2", "--max-degree", "2")
    finally:
        cli.run_theorem = saved
    ok = bad == 0 and ok_code == 0 and body["schema"] == 1 and fail_code == 1 and usage_code == 2 and bad_theorem == 2
    record(
        11,
        ok,
        f"round-trip 1000 exprs, {bad} mismatches; verify exit codes pass={ok_code} fail={fail_code} "
        f"usage={usage_code},{bad_theorem}",
    )


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
