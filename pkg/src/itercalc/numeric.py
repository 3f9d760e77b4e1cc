"""Floating-point iterated integrals on the straight path from 0 to 1.

For a word e_{a1}...e_{an} the value is g_n(1), where g_0 = 1 and
g_j(t) = int_0^t g_{j-1}(s) ds / (s - a_j).  All g_j are tabulated at the
nodes of one composite Gauss-Legendre grid whose panels shrink
geometrically toward t = 0 and t = 1 (where logarithmic singularities
live); within a panel the running integral is taken with a spectral
integration matrix.  Distances to 1 are carried separately so that
1/(s - 1) keeps full relative accuracy next to the endpoint.

The error estimate is the change between two successive grid resolutions.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import legendre

from .derivations import partial_zc
from .errors import NotAdmissible, PoleOnPath, ToleranceNotReached, UnsupportedLetter
from .ncalgebra import NcPoly, Word, is_admissible
from .products import shuffle, stuffle
from .ratfield import ONE, Z, ZERO, RatFun, rf_eval
from .transforms import tau_z

POLE_MARGIN = 1e-9
BUDGET = 1_000_000
_RATIO = 0.2  # geometric panel ratio toward the endpoints
_SMALLEST = 1e-18  # width of the innermost panel at each endpoint


@dataclass(frozen=True)
class NumericResult:
    value: complex
    est_error: float
    evaluations: int


# ---------------------------------------------------------------------------
# letters


def eval_word_letters(w: Word, z0: complex) -> list[complex]:
    """Numeric values of the letters of ``w`` at ``z = z0``.

    Letters that evaluate exactly to 0 or 1 are endpoint singularities and are
    allowed; anything else within ``POLE_MARGIN`` of [0, 1] is rejected.
    """
    out = []
    for x in w:
        if x == ZERO:
            a = 0j
        elif x == ONE:
            a = 1 + 0j
        else:
            a = complex(rf_eval(x, z0))
        if a != 0 and a != 1 and _dist_to_unit_segment(a) <= POLE_MARGIN:
            raise PoleOnPath(f"letter {x} = {a} at z = {z0} lies on the integration path")
        out.append(a)
    return out


def _dist_to_unit_segment(a: complex) -> float:
    x = min(max(a.real, 0.0), 1.0)
    return abs(a - x)


# ---------------------------------------------------------------------------
# grid


@functools.lru_cache(maxsize=32)
def _panel_rule(p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [-1, 1] and the matrix S with S @ f ~ int_{-1}^{x_i} f."""
    x, w = legendre.leggauss(p)
    V = legendre.legvander(x, p - 1)
    Q = np.empty((p, p))
    for j in range(p):
        e = np.zeros(p)
        e[j] = 1.0
        Q[:, j] = legendre.legval(x, legendre.legint(e, lbnd=-1))
    S = Q @ np.linalg.inv(V)
    return x, w, S


@dataclass(frozen=True)
class _Grid:
    t: np.ndarray  # (panels, p) node positions
    d1: np.ndarray  # 1 - t, accurate near t = 1
    half: np.ndarray  # (panels,) half widths
    w: np.ndarray
    S: np.ndarray

    @property
    def size(self) -> int:
        return self.t.size


@functools.lru_cache(maxsize=16)
def _grid(p: int, sub: int) -> _Grid:
    x, w, S = _panel_rule(p)
    k = math.ceil(math.log(_SMALLEST / 0.5) / math.log(_RATIO))
    edges = [0.5 * _RATIO**i for i in range(k, -1, -1)]  # increasing, ends at 0.5
    left = [0.0] + edges
    pieces = []
    for lo, hi in zip(left[:-1], left[1:]):
        for j in range(sub):
            pieces.append((lo + (hi - lo) * j / sub, lo + (hi - lo) * (j + 1) / sub))
    ts, ds, halves = [], [], []
    u = (x + 1) / 2
    for lo, hi in pieces:  # left half in t coordinates
        t = lo + (hi - lo) * u
        ts.append(t)
        ds.append(1.0 - t)
        halves.append((hi - lo) / 2)
    for lo, hi in reversed(pieces):  # right half in d = 1 - t coordinates
        d = hi - (hi - lo) * u
        ts.append(1.0 - d)
        ds.append(d)
        halves.append((hi - lo) / 2)
    return _Grid(np.array(ts), np.array(ds), np.array(halves), w, S)


def _integrate_word(letters: Sequence[complex], grid: _Grid) -> complex:
    g = np.ones(grid.t.shape, dtype=complex)
    total = 0j
    for a in letters:
        if a == 0:
            den = grid.t
        elif a == 1:
            den = -grid.d1
        else:
            den = grid.t - a
        h = g / den
        panel = (h @ grid.w) * grid.half
        running = (h @ grid.S.T) * grid.half[:, None]
        prefix = np.concatenate(([0j], np.cumsum(panel)[:-1]))
        g = prefix[:, None] + running
        total = prefix[-1] + panel[-1]
    return complex(total)


# resolution schedule: (nodes per panel, subdivisions per panel)
_SCHEDULE = ((10, 1), (16, 1), (22, 1), (22, 2), (30, 2), (30, 4), (40, 4), (40, 8))


def _eval_letters(letters: list[complex], tol: float, budget: int = BUDGET) -> NumericResult:
    if not letters:
        return NumericResult(1 + 0j, 0.0, 0)
    if letters[0] == 0 or letters[-1] == 1:
        raise NotAdmissible("first letter 0 or last letter 1: the integral diverges")
    used = 0
    prev = None
    est = math.inf
    for p, sub in _SCHEDULE:
        grid = _grid(p, sub)
        cost = grid.size * len(letters)
        if used + cost > budget:
            break
        val = _integrate_word(letters, grid)
        used += cost
        if prev is not None:
            est = abs(val - prev) + 4e-16 * max(1.0, abs(val)) * len(letters)
            if est <= tol:
                return NumericResult(val, est, used)
        prev = val
    raise ToleranceNotReached(
        f"no convergence to {tol:g} within {budget} evaluations (last estimate {est:.3g})"
    )


def eval_L(w: Word | NcPoly, z0: complex, tol: float = 1e-10) -> NumericResult:
    """Iterated integral of a word, or of a linear combination of words, at ``z = z0``."""
    if isinstance(w, NcPoly):
        value, err, evals = 0j, 0.0, 0
        for word_, c in w.items():
            r = _eval_letters(eval_word_letters(word_, z0), tol / max(1, len(w)) / abs(c))
            value += c * r.value
            err += abs(c) * r.est_error
            evals += r.evaluations
        return NumericResult(value, err, evals)
    return _eval_letters(eval_word_letters(tuple(w), z0), tol)


class LEvaluator:
    """Caches word values per (word, z0) for corpus sweeps."""

    def __init__(self, tol: float = 1e-12):
        self.tol = tol
        self._cache: dict[tuple[Word, complex], NumericResult] = {}

    def word(self, w: Word, z0: complex) -> NumericResult:
        key = (w, complex(z0))
        if key not in self._cache:
            self._cache[key] = _eval_letters(eval_word_letters(w, z0), self.tol)
        return self._cache[key]

    def __call__(self, a: NcPoly, z0: complex) -> NumericResult:
        value, err, evals = 0j, 0.0, 0
        for w, c in a.items():
            r = self.word(w, z0)
            value += c * r.value
            err += abs(c) * r.est_error
            evals += r.evaluations
        return NumericResult(value, err, evals)


# ---------------------------------------------------------------------------
# relation checks


@dataclass(frozen=True)
class RelationReport:
    kind: str
    lhs: complex
    rhs: complex
    tol: float

    @property
    def error(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def passed(self) -> bool:
        return self.error <= self.tol

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "error": self.error,
            "tol": self.tol,
            "pass": self.passed,
        }


_ALPHABET = (ZERO, ONE, Z)


def _require_admissible(a: NcPoly, alphabet: Sequence[RatFun], what: str) -> None:
    for w in a:
        for x in w:
            if x not in alphabet:
                raise UnsupportedLetter(f"{what}: letter {x} outside {{{', '.join(map(str, alphabet))}}}")
        if not is_admissible(w, ZERO, ONE):
            raise NotAdmissible(f"{what}: word is not admissible for the path from 0 to 1")


def check_relation_numeric(
    kind: str,
    u: NcPoly,
    v: NcPoly | None,
    z0: complex,
    tol: float = 1e-5,
    evaluator: LEvaluator | None = None,
) -> RelationReport:
    """Compare L(u ш v), L(u * v) or L(tau_z u) with L(u)L(v) or L(u) at ``z0``."""
    L = evaluator or LEvaluator(tol=min(1e-10, tol * 1e-3))
    if kind == "shuffle":
        _require_admissible(u, _ALPHABET, "u")
        _require_admissible(v, _ALPHABET, "v")
        return RelationReport(kind, L(shuffle(u, v), z0).value, L(u, z0).value * L(v, z0).value, tol)
    if kind == "stuffle":
        _require_admissible(u, (ZERO, ONE), "u")
        _require_admissible(v, _ALPHABET, "v")
        return RelationReport(kind, L(stuffle(u, v), z0).value, L(u, z0).value * L(v, z0).value, tol)
    if kind == "duality":
        _require_admissible(u, _ALPHABET, "u")
        return RelationReport(kind, L(tau_z(u), z0).value, L(u, z0).value, tol)
    raise ValueError(f"unknown relation {kind!r}")


def check_diff_formula(
    w: NcPoly,
    z0: complex,
    h: float = 1e-4,
    tol: float = 1e-3,
    evaluator: LEvaluator | None = None,
) -> RelationReport:
    """Central difference of L(w) in z against sum_c L(d_{z,c} w)(z0) / (z0 - c)."""
    L = evaluator or LEvaluator(tol=1e-12)
    _require_admissible(w, _ALPHABET, "w")
    z0 = complex(z0)
    lhs = (L(w, z0 + h).value - L(w, z0 - h).value) / (2 * h)
    rhs = sum(L(partial_zc(c, w), z0).value / (z0 - c) for c in (0, 1))
    return RelationReport("diff", lhs, complex(rhs), tol)
