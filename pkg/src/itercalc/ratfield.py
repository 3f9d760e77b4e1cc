"""Exact arithmetic in Q(z), grading homomorphisms and Mobius maps.

Polynomials are tuples of :class:`fractions.Fraction` ordered from the
constant term upwards, with no trailing zeros (the zero polynomial is ``()``).
A :class:`RatFun` is kept reduced with a monic denominator, so two values are
equal exactly when their stored tuples are.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    DegenerateMatrix,
    DivisionByZero,
    PoleAtEvaluationPoint,
    ZeroDenominator,
)

Poly = tuple  # tuple[Fraction, ...], low degree first

# ---------------------------------------------------------------------------
# dense univariate polynomials over Q


def _trim(coeffs: Sequence) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def p_deg(p: Poly) -> int:
    return len(p) - 1


def p_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def p_neg(p: Poly) -> Poly:
    return tuple(-x for x in p)


def p_sub(p: Poly, q: Poly) -> Poly:
    return p_add(p, p_neg(q))


def p_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def p_scale(p: Poly, c) -> Poly:
    return _trim([x * c for x in p])


def p_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise DivisionByZero("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 1)
    while len(rem) - 1 >= dq and rem:
        shift = len(rem) - 1 - dq
        c = rem[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            rem[shift + i] -= c * b
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return _trim(quot), _trim(rem)


def p_monic(p: Poly) -> Poly:
    return p_scale(p, 1 / p[-1]) if p else p


def p_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    while q:
        p, q = q, p_divmod(p, q)[1]
    return p_monic(p)


def p_eval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def p_root_order(p: Poly, alpha: Fraction) -> int:
    """Multiplicity of ``alpha`` as a root of the nonzero polynomial ``p``."""
    k = 0
    cur = list(p)
    while True:
        # synthetic division by (z - alpha)
        acc = Fraction(0)
        out = []
        for c in reversed(cur):
            acc = acc * alpha + c
            out.append(acc)
        if out[-1] != 0:
            return k
        k += 1
        cur = list(reversed(out[:-1]))


# ---------------------------------------------------------------------------
# the field Q(z)


class RatFun:
    """An element of Q(z) in canonical form: ``num/den`` reduced, ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, _canonical: bool = False):
        if not _canonical:
            num, den = _normalize(_trim(num), _trim(den))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", hash((num, den)))

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    def __reduce__(self):
        return (RatFun, (self.num, self.den, True))

    @classmethod
    def const(cls, q) -> "RatFun":
        q = Fraction(q)
        return cls((q,) if q else (), (Fraction(1),), True)

    @classmethod
    def var(cls) -> "RatFun":
        return cls((Fraction(0), Fraction(1)), (Fraction(1),), True)

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFun.const(other)
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_const(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def sort_key(self) -> tuple:
        return (len(self.num), tuple(reversed(self.num)), len(self.den), tuple(reversed(self.den)))

    def __lt__(self, other: "RatFun") -> bool:
        return self.sort_key() < other.sort_key()

    def __add__(self, other):
        return rf_arith(self, as_ratfun(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return rf_arith(self, as_ratfun(other), "sub")

    def __rsub__(self, other):
        return rf_arith(as_ratfun(other), self, "sub")

    def __mul__(self, other):
        return rf_arith(self, as_ratfun(other), "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_arith(self, as_ratfun(other), "div")

    def __rtruediv__(self, other):
        return rf_arith(as_ratfun(other), self, "div")

    def __neg__(self):
        return RatFun(p_neg(self.num), self.den, True)

    def __pow__(self, k: int):
        if k < 0:
            return RatFun.const(1) / (self ** -k)
        out = RatFun.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"RatFun({format_ratfun(self)!r})"

    def __str__(self):
        return format_ratfun(self)


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den:
        raise ZeroDenominator("rational function with zero denominator")
    if not num:
        return (), (Fraction(1),)
    g = p_gcd(num, den)
    if len(g) > 1:
        num = p_divmod(num, g)[0]
        den = p_divmod(den, g)[0]
    lead = den[-1]
    return p_scale(num, 1 / lead), p_scale(den, 1 / lead)


def rf_normalize(num, den) -> RatFun:
    """Canonical RatFun for ``num/den`` given as coefficient sequences (low degree first)."""
    return RatFun(_trim(num), _trim(den))


@functools.lru_cache(maxsize=1 << 16)
def rf_arith(x: RatFun, y: RatFun, op: str) -> RatFun:
    if op == "add" or op == "sub":
        yn = y.num if op == "add" else p_neg(y.num)
        if x.den == y.den:
            return RatFun(p_add(x.num, yn), x.den)
        return RatFun(p_add(p_mul(x.num, y.den), p_mul(yn, x.den)), p_mul(x.den, y.den))
    if op == "mul":
        return RatFun(p_mul(x.num, y.num), p_mul(x.den, y.den))
    if op == "div":
        if not y.num:
            raise DivisionByZero("division by the zero rational function")
        return RatFun(p_mul(x.num, y.den), p_mul(x.den, y.num))
    raise ValueError(f"unknown operation {op!r}")


RatLike = Union[RatFun, int, Fraction, str]


def as_ratfun(x: RatLike) -> RatFun:
    """Coerce ints, Fractions and text such as ``"(z-1)/z"`` to RatFun."""
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFun.const(x)
    if isinstance(x, str):
        from .parsing import parse_ratfun

        return parse_ratfun(x)
    raise TypeError(f"cannot interpret {x!r} as an element of Q(z)")


ZERO = RatFun.const(0)
ONE = RatFun.const(1)
Z = RatFun.var()


def rf_eval(x: RatFun, z0: complex) -> complex:
    num = p_eval(tuple(float(c) for c in x.num), complex(z0))
    den = p_eval(tuple(float(c) for c in x.den), complex(z0))
    scale = sum(abs(float(c)) * abs(z0) ** k for k, c in enumerate(x.den))
    if abs(den) <= 1e-12 * max(scale, 1e-300):
        raise PoleAtEvaluationPoint(f"{x} has a pole at z = {z0}")
    return num / den


def format_poly(p: Poly, var: str = "z") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a.numerator == 1 else f"{a.numerator}*{mono}"
            if a.denominator != 1:
                body += f"/{a.denominator}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


def format_ratfun(x: RatFun) -> str:
    """Compact text form that :func:`itercalc.parsing.parse_ratfun` reads back."""
    num = format_poly(x.num)
    if x.den == (1,):
        return num
    den = format_poly(x.den)
    if sum(1 for c in x.num if c) > 1:
        num = f"({num})"
    if sum(1 for c in x.den if c) > 1:
        den = f"({den})"
    return f"{num}/{den}"


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class GradingMap:
    """A homomorphism from Q(z)^x to Z: valuation at a rational point, at infinity, or trivial."""

    kind: str  # "at", "inf" or "trivial"
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("at", "inf", "trivial"):
            raise ValueError(f"unknown grading kind {self.kind!r}")
        if self.kind == "at":
            if self.alpha is None:
                raise ValueError("AtPoint grading needs a point")
            object.__setattr__(self, "alpha", Fraction(self.alpha))
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} grading takes no point")

    @classmethod
    def at(cls, alpha) -> "GradingMap":
        return cls("at", Fraction(alpha))

    @classmethod
    def infinity(cls) -> "GradingMap":
        return cls("inf")

    @classmethod
    def trivial(cls) -> "GradingMap":
        return cls("trivial")

    def __call__(self, x: RatFun) -> int:
        return bracket(self, x)

    def __str__(self):
        if self.kind == "at":
            return f"at:{self.alpha}"
        return self.kind


@functools.lru_cache(maxsize=1 << 16)
def bracket(g: GradingMap, x: RatFun) -> int:
    """[x] for the grading ``g``, with [0] = 0."""
    if not x.num or g.kind == "trivial":
        return 0
    if g.kind == "inf":
        return p_deg(x.den) - p_deg(x.num)
    return p_root_order(x.num, g.alpha) - p_root_order(x.den, g.alpha)


@functools.lru_cache(maxsize=1 << 18)
def bracket_diff(g: GradingMap, x: RatFun, y: RatFun) -> int:
    """[x - y]; cached because derivations evaluate it on every adjacent letter pair."""
    if x == y:
        return 0
    return bracket(g, x - y)


# ---------------------------------------------------------------------------
# the projective line and Mobius maps


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_infinity, ())


def _infinity():
    return INFINITY


INFINITY = _Infinity()
ProjPoint = Union[RatFun, _Infinity]


@dataclass(frozen=True)
class MobiusMap:
    """The matrix (a b; c d) acting by x -> (a x + b)/(c x + d)."""

    a: RatFun
    b: RatFun
    c: RatFun
    d: RatFun

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_ratfun(getattr(self, name)))
        if not self.det:
            raise DegenerateMatrix(f"singular Mobius matrix {self}")

    @classmethod
    def of(cls, a, b, c, d) -> "MobiusMap":
        return cls(as_ratfun(a), as_ratfun(b), as_ratfun(c), as_ratfun(d))

    @property
    def det(self) -> RatFun:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Matrix product; ``(g @ h)(x) == g(h(x))``."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return mobius_apply(self, p)

    def __str__(self):
        return f"{self.a},{self.b};{self.c},{self.d}"


IDENTITY = MobiusMap(ONE, ZERO, ZERO, ONE)
# x -> z(x - 1)/(x - z); swaps 0 <-> 1 and z <-> infinity
GAMMA_Z = MobiusMap(Z, -Z, ONE, -Z)


def mobius_apply(g: MobiusMap, p: ProjPoint) -> ProjPoint:
    if p is INFINITY:
        return g.a / g.c if g.c else INFINITY
    den = g.c * p + g.d
    if not den:
        return INFINITY
    return (g.a * p + g.b) / den


def mobius_inverse(g: MobiusMap) -> MobiusMap:
    det = g.det
    return MobiusMap(g.d / det, -g.b / det, -g.c / det, g.a / det)
