"""Exact residuals (LHS - RHS) of the derivation identities, and exhaustive sweeps over them.

Every residual is an :class:`NcPoly`; a case passes when it has no terms.
Sweeps are deterministic: random inputs come from a seeded
:class:`random.Random`.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .derivations import partial, partial_with_f, partial_zc
from .errors import EmptyWordInput, GammaMapsEndpointToInfinity, UnsupportedLetter
from .ncalgebra import NcPoly, Word, in_A1, is_admissible
from .parsing import format_expr, format_hword, format_word
from .products import (
    HPoly,
    all_words,
    embed_i,
    hbar_stuffle,
    shuffle,
    shuffle_perm_oracle,
    stuffle,
    stuffle_paths_oracle,
)
from .ratfield import (
    GAMMA_Z,
    INFINITY,
    ONE,
    Z,
    ZERO,
    GradingMap,
    MobiusMap,
    RatFun,
    RatLike,
    as_ratfun,
    bracket,
    bracket_diff,
    mobius_apply,
    mobius_inverse,
)
from .transforms import epsilon_gamma, gamma_star, tau_z, tau_z_inverse

ALPHABET = (ZERO, ONE, Z)
DEFAULT_GRADINGS = (GradingMap.at(0), GradingMap.at(1), GradingMap.infinity(), GradingMap.trivial())
MOBIUS_GRADINGS = (GradingMap.at(0), GradingMap.infinity())
SHIFT = MobiusMap(ONE, ONE, ZERO, ONE)
INVERT = MobiusMap(ZERO, ONE, ONE, ZERO)
ENDPOINTS = ((ZERO, ONE), (ONE, ZERO), (ONE, Z), (Z, ZERO))


@dataclass(frozen=True)
class ResidualReport:
    theorem: str
    inputs: str
    residual: NcPoly
    correction: NcPoly = field(default_factory=NcPoly.zero)

    @property
    def passed(self) -> bool:
        return not self.residual

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "residual": format_expr(self.residual),
            "pass": self.passed,
        }


@dataclass
class SweepReport:
    theorem: str
    params: dict
    reports: list[ResidualReport]
    counters: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports) and not self.counters.get("violations", 0)

    @property
    def failures(self) -> list[ResidualReport]:
        return [r for r in self.reports if not r.passed]

    def to_json(self, include_cases: bool = True) -> dict:
        out = {
            "schema": 1,
            "theorem": self.theorem,
            "params": self.params,
            "cases": len(self.reports),
            "failures": len(self.failures),
            "pass": self.passed,
            "counters": self.counters,
        }
        if include_cases:
            out["results"] = [r.to_json() for r in self.reports]
        return out


def _as_word(u) -> Word:
    if isinstance(u, NcPoly):
        items = list(u.items())
        if len(items) != 1 or items[0][1] != 1:
            raise ValueError(f"expected a single monomial, got {format_expr(u)}")
        return items[0][0]
    return tuple(as_ratfun(x) for x in u)


def _as_poly(u) -> NcPoly:
    return u if isinstance(u, NcPoly) else NcPoly.monomial(_as_word(u))


def _desc(**kw) -> str:
    parts = []
    for k, v in kw.items():
        if isinstance(v, NcPoly):
            v = format_expr(v)
        elif isinstance(v, tuple) and all(isinstance(x, RatFun) for x in v):
            v = format_word(v) or "1"
        parts.append(f"{k}={v}")
    return ", ".join(parts)


def _mono(w: Word) -> NcPoly:
    return NcPoly.monomial(w)


# ---------------------------------------------------------------------------
# single residuals


def residual_thm32(u, v, g: GradingMap, s: RatLike = ZERO, t: RatLike = ONE) -> ResidualReport:
    u, v = _as_poly(u), _as_poly(v)
    d = lambda a: partial(g, s, t, a)  # noqa: E731
    res = d(shuffle(u, v)) - shuffle(d(u), v) - shuffle(u, d(v))
    return ResidualReport("3.2", _desc(u=u, v=v, g=g, s=as_ratfun(s), t=as_ratfun(t)), res)


def residual_thm44(u, v, g: GradingMap, s: RatLike = ZERO, t: RatLike = ONE) -> ResidualReport:
    u, v = _as_word(u), _as_word(v)
    if not u or not v:
        raise EmptyWordInput("the stuffle formula needs non-constant monomials")
    a, b = u[0], v[0]
    pu, pv = _mono(u), _mono(v)
    d = lambda x: partial(g, s, t, x)  # noqa: E731
    lam = NcPoly.zero()
    if not a:
        lam = lam + bracket(g, b) * stuffle(_mono(u[1:]), pv)
    if not b:
        lam = lam + bracket(g, a) * stuffle(pu, _mono(v[1:]))
    res = d(stuffle(pu, pv)) - stuffle(d(pu), pv) - stuffle(pu, d(pv)) - lam
    return ResidualReport("4.4", _desc(u=u, v=v, g=g, s=as_ratfun(s), t=as_ratfun(t)), res, lam)


def residual_thm51(gamma: MobiusMap, g: GradingMap, s: RatLike, t: RatLike, w) -> ResidualReport:
    s, t = as_ratfun(s), as_ratfun(t)
    w = _as_word(w)
    if not w:
        raise EmptyWordInput("the Mobius formula needs a non-constant monomial")
    gs, gt = mobius_apply(gamma, s), mobius_apply(gamma, t)
    if gs is INFINITY or gt is INFINITY:
        raise GammaMapsEndpointToInfinity(f"gamma = {gamma} sends an endpoint of ({s}, {t}) to infinity")
    lhs = gamma_star(mobius_inverse(gamma), partial(g, gs, gt, gamma_star(gamma, _mono(w))))
    corr = NcPoly.zero()
    if w[0] == s:
        corr = corr + epsilon_gamma(gamma, g, s) * _mono(w[1:])
    if w[-1] == t:
        corr = corr - epsilon_gamma(gamma, g, t) * _mono(w[:-1])
    res = lhs - partial(g, s, t, _mono(w)) - corr
    return ResidualReport("5.1", _desc(gamma=gamma, g=g, s=s, t=t, w=w), res, corr)


def _require_alphabet(w: Word, allowed: Sequence[RatFun]) -> None:
    for x in w:
        if x not in allowed:
            raise UnsupportedLetter(f"letter {x} outside {{{', '.join(map(str, allowed))}}}")


def residual_thm61(part: int, c: int, u, v=None) -> ResidualReport:
    if c not in (0, 1):
        raise ValueError(f"c must be 0 or 1, got {c!r}")
    d = lambda x: partial_zc(c, x)  # noqa: E731
    if part == 1:
        u, v = _as_poly(u), _as_poly(v)
        for x in (u, v):
            _require_alphabet(tuple(x.letters()), ALPHABET)
        res = d(shuffle(u, v)) - shuffle(d(u), v) - shuffle(u, d(v))
        return ResidualReport("6.1(1)", _desc(c=c, u=u, v=v), res)
    if part == 2:
        u, v = _as_word(u), _as_word(v)
        if not u or not v:
            raise EmptyWordInput("part 2 needs non-constant monomials")
        _require_alphabet(u, (ZERO, ONE))
        _require_alphabet(v, ALPHABET)
        corr = NcPoly.zero()
        if u[0] == ZERO and v[0] == Z and c == 0:
            corr = stuffle(_mono(u[1:]), _mono(v))
        res = d(stuffle(_mono(u), _mono(v))) - stuffle(_mono(u), d(_mono(v))) - corr
        return ResidualReport("6.1(2)", _desc(c=c, u=u, v=v), res, corr)
    if part == 3:
        u = _as_word(u)
        if not u:
            raise EmptyWordInput("part 3 needs a non-constant monomial")
        _require_alphabet(u, ALPHABET)
        sign = (c == 1) - (c == 0)
        corr = NcPoly.zero()
        if u[0] == ZERO:
            corr = corr + sign * _mono(u[1:])
        if u[-1] == ONE:
            corr = corr + sign * _mono(u[:-1])
        res = tau_z_inverse(d(tau_z(_mono(u)))) - d(_mono(u)) - corr
        return ResidualReport("6.1(3)", _desc(c=c, u=u), res, corr)
    raise ValueError(f"part must be 1, 2 or 3, got {part!r}")


# ---------------------------------------------------------------------------
# sweeps


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ITERCALC_THREADS", "1")))
    except ValueError:
        return 1


def _run(fn: Callable, tasks: list, workers: int | None) -> list:
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(tasks) < 64:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_star, [(fn, t) for t in tasks], chunksize=max(1, len(tasks) // (8 * workers))))


def _star(job):
    fn, args = job
    return fn(*args)


def word_pairs(alphabet, max_total: int, nonconstant: bool = False) -> list[tuple[Word, Word]]:
    lo = 1 if nonconstant else 0
    words = all_words(alphabet, max_total - lo, lo)
    return [(u, v) for u in words for v in words if len(u) + len(v) <= max_total]


def sweep_thm32(max_degree: int = 6, gradings=DEFAULT_GRADINGS, workers: int | None = None) -> SweepReport:
    tasks = [(u, v, g) for u, v in word_pairs(ALPHABET, max_degree) for g in gradings]
    reports = _run(residual_thm32, tasks, workers)
    return SweepReport("3.2", {"max_degree": max_degree, "gradings": [str(g) for g in gradings]}, reports)


def sweep_thm44(max_degree: int = 6, gradings=DEFAULT_GRADINGS, workers: int | None = None) -> SweepReport:
    tasks = [(u, v, g) for u, v in word_pairs(ALPHABET, max_degree, nonconstant=True) for g in gradings]
    reports = _run(residual_thm44, tasks, workers)
    nontrivial = [r for r in reports if r.correction]
    counters = {"lambda_nontrivial": len(nontrivial)}
    if nontrivial:
        counters["lambda_example"] = f"{nontrivial[0].inputs}: correction {format_expr(nontrivial[0].correction)}"
    return SweepReport("4.4", {"max_degree": max_degree, "gradings": [str(g) for g in gradings]}, reports, counters)


def random_mobius(rng: random.Random, count: int, lo: int = -4, hi: int = 4) -> list[MobiusMap]:
    """Integer matrices with nonzero determinant sending 0 and 1 to finite points."""
    out = []
    while len(out) < count:
        a, b, c, d = (rng.randint(lo, hi) for _ in range(4))
        if a * d - b * c == 0 or d == 0 or c + d == 0:
            continue
        out.append(MobiusMap.of(a, b, c, d))
    return out


def mobius_family(seed: int = 0, n_random: int = 5) -> list[MobiusMap]:
    return [GAMMA_Z, SHIFT, INVERT] + random_mobius(random.Random(seed), n_random)


def valid_endpoints(gamma: MobiusMap, candidates=ENDPOINTS) -> list[tuple[RatFun, RatFun]]:
    return [
        (s, t)
        for s, t in candidates
        if mobius_apply(gamma, s) is not INFINITY and mobius_apply(gamma, t) is not INFINITY
    ]


def sweep_thm51(
    max_degree: int = 4, seed: int = 0, gradings=MOBIUS_GRADINGS, workers: int | None = None
) -> SweepReport:
    gammas = mobius_family(seed)
    words = all_words(ALPHABET, max_degree, 1)
    tasks = []
    skipped = 0
    for gamma in gammas:
        ends = valid_endpoints(gamma)
        skipped += len(ENDPOINTS) - len(ends)
        for s, t in ends:
            for g in gradings:
                tasks.extend((gamma, g, s, t, w) for w in words)
    reports = _run(residual_thm51, tasks, workers)
    counters = {
        "matrices": len(gammas),
        "endpoint_pairs_skipped": skipped,
        "correction_nontrivial": sum(1 for r in reports if r.correction),
    }
    params = {"max_degree": max_degree, "seed": seed, "gradings": [str(g) for g in gradings],
              "matrices": [str(m) for m in gammas]}
    return SweepReport("5.1", params, reports, counters)


def sweep_thm61(max_degree: int = 5, parts: Iterable[int] = (1, 2, 3), workers: int | None = None) -> SweepReport:
    parts = tuple(parts)
    tasks = []
    for c in (0, 1):
        if 1 in parts:
            tasks += [(1, c, u, v) for u, v in word_pairs(ALPHABET, max_degree)]
        if 2 in parts:
            us = all_words((ZERO, ONE), max_degree - 1, 1)
            vs = all_words(ALPHABET, max_degree - 1, 1)
            tasks += [(2, c, u, v) for u in us for v in vs if len(u) + len(v) <= max_degree]
        if 3 in parts:
            tasks += [(3, c, u, None) for u in all_words(ALPHABET, max_degree, 1)]
    reports = _run(residual_thm61, tasks, workers)
    # the subspace forms: zero correction on A^1_{0,1} (part 2) and A^0_{0,1,z} (part 3)
    sub_cases = sub_violations = 0
    for (part, _c, u, _v), r in zip(tasks, reports):
        if (part == 2 and in_A1(u)) or (part == 3 and is_admissible(u, ZERO, ONE)):
            sub_cases += 1
            sub_violations += bool(r.correction)
    counters = {
        "subspace_cases": sub_cases,
        "violations": sub_violations,
        "correction_nontrivial": sum(1 for r in reports if r.correction),
    }
    return SweepReport("6.1", {"max_degree": max_degree, "parts": list(parts)}, reports, counters)


# -- supporting identities ----------------------------------------------------


def _check(theorem: str, inputs: str, lhs: NcPoly, rhs: NcPoly) -> ResidualReport:
    return ResidualReport(theorem, inputs, lhs - rhs)


def sweep_stuffle_paths(max_degree: int = 7) -> SweepReport:
    """Recursive stuffle against the lattice-path expansion."""
    reports = []
    for u, v in word_pairs(ALPHABET, max_degree, nonconstant=True):
        reports.append(_check("stuffle-paths", _desc(u=u, v=v), stuffle(_mono(u), _mono(v)), stuffle_paths_oracle(u, v)))
    return SweepReport("stuffle-paths", {"max_degree": max_degree}, reports)


def sweep_shuffle_oracle(max_degree: int = 7) -> SweepReport:
    reports = []
    for u, v in word_pairs(ALPHABET, max_degree):
        reports.append(_check("shuffle-perm", _desc(u=u, v=v), shuffle(_mono(u), _mono(v)), shuffle_perm_oracle(u, v)))
    return SweepReport("shuffle-perm", {"max_degree": max_degree}, reports)


def random_hword(rng: random.Random, max_k: int = 3, max_depth: int = 3, values=(1, -1, Z)):
    depth = rng.randint(1, max_depth)
    return tuple((rng.randint(1, max_k), as_ratfun(rng.choice(values))) for _ in range(depth))


def sweep_stuffle_laws(
    max_degree: int = 6, n_assoc: int = 200, n_embed: int = 200, seed: int = 0
) -> SweepReport:
    """Commutativity (exhaustive), associativity and the h^1 embedding (seeded random)."""
    rng = random.Random(seed)
    reports = []
    for u, v in word_pairs(ALPHABET, max_degree):
        pu, pv = _mono(u), _mono(v)
        reports.append(_check("stuffle-commutative", _desc(u=u, v=v), stuffle(pu, pv), stuffle(pv, pu)))
        reports.append(_check("shuffle-commutative", _desc(u=u, v=v), shuffle(pu, pv), shuffle(pv, pu)))
    for _ in range(n_assoc):
        while True:
            lens = [rng.randint(0, max_degree) for _ in range(3)]
            if sum(lens) <= max_degree:
                break
        u, v, w = (tuple(rng.choice(ALPHABET) for _ in range(k)) for k in lens)
        pu, pv, pw = _mono(u), _mono(v), _mono(w)
        desc = _desc(u=u, v=v, w=w)
        reports.append(_check("stuffle-associative", desc, stuffle(stuffle(pu, pv), pw), stuffle(pu, stuffle(pv, pw))))
        reports.append(_check("shuffle-associative", desc, shuffle(shuffle(pu, pv), pw), shuffle(pu, shuffle(pv, pw))))
    for _ in range(n_embed):
        hu, hv = random_hword(rng), random_hword(rng)
        lhs = embed_i(hbar_stuffle(HPoly({hu: 1}), HPoly({hv: 1})))
        rhs = stuffle(embed_i(HPoly({hu: 1})), embed_i(HPoly({hv: 1})))
        reports.append(_check("embedding", f"u={format_hword(hu)}, v={format_hword(hv)}", lhs, rhs))
    params = {"max_degree": max_degree, "n_assoc": n_assoc, "n_embed": n_embed, "seed": seed}
    return SweepReport("stuffle-laws", params, reports)


def random_valid_f(rng: random.Random, g: GradingMap, s: RatFun, t: RatFun, w: Word, lo=-5, hi=5) -> list[int]:
    a = (s,) + tuple(w) + (t,)
    return [
        bracket_diff(g, a[i + 1], a[i]) if a[i] != a[i + 1] else rng.randint(lo, hi)
        for i in range(len(w) + 1)
    ]


def sweep_lift_f(
    max_len: int = 5,
    n_f: int = 100,
    seed: int = 0,
    gradings=(GradingMap.at(0),),
    alphabet=(ZERO, ONE, Z, RatFun.const(2)),
    s: RatLike = ZERO,
    t: RatLike = ONE,
) -> SweepReport:
    s, t = as_ratfun(s), as_ratfun(t)
    rng = random.Random(seed)
    reports = []
    for g in gradings:
        for w in all_words(alphabet, max_len):
            ref = partial(g, s, t, _mono(w))
            bad = NcPoly.zero()
            for _ in range(n_f):
                diff = partial_with_f(g, s, t, w, random_valid_f(rng, g, s, t, w)) - ref
                if diff:
                    bad = diff
                    break
            reports.append(ResidualReport("lift-f", _desc(w=w, g=g, s=s, t=t, n_f=n_f), bad))
    params = {"max_len": max_len, "n_f": n_f, "seed": seed, "gradings": [str(g) for g in gradings]}
    return SweepReport("lift-f", params, reports)


def sweep_specialization(max_len: int = 6) -> SweepReport:
    reports = []
    for c in (0, 1):
        g = GradingMap.at(c)
        for w in all_words(ALPHABET, max_len):
            p = _mono(w)
            reports.append(_check("specialization", _desc(c=c, w=w), partial_zc(c, p), partial(g, ZERO, ONE, p)))
    return SweepReport("specialization", {"max_len": max_len}, reports)


def run_theorem(theorem: str, max_degree: int | None = None, part: int | None = None,
                seed: int = 0, workers: int | None = None) -> SweepReport:
    """Dispatch used by the command line ``verify`` verb."""
    kw = {} if max_degree is None else {"max_degree": max_degree}
    if theorem == "3.2":
        return sweep_thm32(workers=workers, **kw)
    if theorem == "4.4":
        return sweep_thm44(workers=workers, **kw)
    if theorem == "5.1":
        return sweep_thm51(seed=seed, workers=workers, **kw)
    if theorem == "6.1":
        parts = (part,) if part else (1, 2, 3)
        return sweep_thm61(parts=parts, workers=workers, **kw)
    if theorem == "lift-f":
        return sweep_lift_f(seed=seed, **({} if max_degree is None else {"max_len": max_degree}))
    if theorem == "stuffle-laws":
        return sweep_stuffle_laws(seed=seed, **kw)
    if theorem == "stuffle-paths":
        return sweep_stuffle_paths(**kw)
    if theorem == "shuffle-perm":
        return sweep_shuffle_oracle(**kw)
    if theorem == "specialization":
        return sweep_specialization(**({} if max_degree is None else {"max_len": max_degree}))
    raise ValueError(f"unknown theorem {theorem!r}")


THEOREMS = ("3.2", "4.4", "5.1", "6.1", "lift-f", "stuffle-laws", "stuffle-paths", "shuffle-perm", "specialization")
