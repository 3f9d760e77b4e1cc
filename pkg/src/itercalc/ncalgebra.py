"""Words in the letters e_p (p in Q(z)) and integer combinations of them."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Tuple

from .ratfield import ONE, ZERO, RatFun, RatLike, as_ratfun

Word = Tuple[RatFun, ...]

EMPTY: Word = ()


def word(*letters: RatLike) -> Word:
    """``word(1, 0)`` is the monomial e_1 e_0."""
    return tuple(as_ratfun(x) for x in letters)


def word_key(w: Word) -> tuple:
    """Display order: longer words first, then descending lexicographic on letters."""
    return (len(w), tuple(a.sort_key() for a in w))


class NcPoly:
    """A finite Z-linear combination of words, stored without zero coefficients.

    Instances are immutable; arithmetic returns new objects.  ``*`` between
    two NcPoly is concatenation, ``*`` with an ``int`` is scaling.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, int] = {}
        for w, c in items:
            if c:
                acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict) -> "NcPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls._from_clean({})

    @classmethod
    def one(cls) -> "NcPoly":
        return cls._from_clean({EMPTY: 1})

    @classmethod
    def monomial(cls, w: Word, coeff: int = 1) -> "NcPoly":
        return cls._from_clean({tuple(w): coeff} if coeff else {})

    # -- mapping-like access -------------------------------------------------

    @property
    def terms(self) -> Mapping[Word, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, int]]:
        return iter(self._terms.items())

    def coeff(self, w: Word) -> int:
        return self._terms.get(tuple(w), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({EMPTY: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Word, int]]:
        return sorted(self._terms.items(), key=lambda wc: word_key(wc[0]), reverse=True)

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        return max((len(w) for w in self._terms), default=-1)

    def letters(self) -> set[RatFun]:
        return {a for w in self._terms for a in w}

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return nc_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return nc_scale(-1, self)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return nc_add(self, nc_scale(-1, other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return nc_add(other, nc_scale(-1, self))

    def __mul__(self, other):
        if isinstance(other, int):
            return nc_scale(other, self)
        if isinstance(other, NcPoly):
            return nc_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return nc_scale(other, self)
        return NotImplemented

    def __pow__(self, k: int):
        out = NcPoly.one()
        for _ in range(k):
            out = nc_mul(out, self)
        return out

    def __repr__(self):
        from .parsing import format_expr

        return f"NcPoly({format_expr(self)!r})"

    def __str__(self):
        from .parsing import format_expr

        return format_expr(self)


def _coerce(x):
    if isinstance(x, NcPoly):
        return x
    if isinstance(x, int):
        return NcPoly.monomial(EMPTY, x)
    return NotImplemented


def e(*letters: RatLike) -> NcPoly:
    """The monomial e_{a1}...e_{an} as an NcPoly; ``e()`` is 1."""
    return NcPoly.monomial(word(*letters))


def nc_add(a: NcPoly, b: NcPoly) -> NcPoly:
    out = dict(a._terms)
    for w, c in b._terms.items():
        s = out.get(w, 0) + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return NcPoly._from_clean(out)


def nc_scale(n: int, a: NcPoly) -> NcPoly:
    if not n:
        return NcPoly.zero()
    return NcPoly._from_clean({w: n * c for w, c in a._terms.items()})


def nc_mul(a: NcPoly, b: NcPoly) -> NcPoly:
    out: dict[Word, int] = {}
    for u, cu in a._terms.items():
        for v, cv in b._terms.items():
            w = u + v
            out[w] = out.get(w, 0) + cu * cv
    return NcPoly._from_clean({w: c for w, c in out.items() if c})


def nc_sum(polys: Iterable[NcPoly]) -> NcPoly:
    out: dict[Word, int] = {}
    for p in polys:
        for w, c in p._terms.items():
            out[w] = out.get(w, 0) + c
    return NcPoly._from_clean({w: c for w, c in out.items() if c})


def from_dict(terms: Mapping[Word, int]) -> NcPoly:
    return NcPoly(terms)


def linear_map(a: NcPoly, f) -> NcPoly:
    """Extend ``f: Word -> NcPoly | dict`` linearly to ``a``."""
    out: dict[Word, int] = {}
    for w, c in a._terms.items():
        img = f(w)
        items = img._terms.items() if isinstance(img, NcPoly) else img.items()
        for v, d in items:
            out[v] = out.get(v, 0) + c * d
    return NcPoly._from_clean({w: c for w, c in out.items() if c})


def is_admissible(w: Word, s: RatLike = ZERO, t: RatLike = ONE) -> bool:
    """Membership of the monomial ``w`` in the admissible subspace for endpoints (s, t)."""
    s, t = as_ratfun(s), as_ratfun(t)
    if not w:
        return True
    if len(w) == 1:
        return w[0] != s and w[0] != t
    return w[0] != s and w[-1] != t


def in_A1(w: Word) -> bool:
    """True iff ``w`` is empty or does not start with e_0."""
    return not w or bool(w[0])


def poly_is_admissible(a: NcPoly, s: RatLike = ZERO, t: RatLike = ONE) -> bool:
    return all(is_admissible(w, s, t) for w in a)
