"""Shuffle and generalized stuffle products, with combinatorial oracles.

The recursive products work on words and are memoized; the oracles
(:func:`shuffle_perm_oracle`, :func:`stuffle_paths_oracle`) enumerate
interleavings and lattice paths directly and share no code with them.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Mapping, Tuple

from .errors import EmptyWordInput
from .ncalgebra import NcPoly, Word
from .ratfield import ONE, ZERO, RatFun, RatLike, as_ratfun

# ---------------------------------------------------------------------------
# helpers on raw term dicts


def _prepend(a: RatFun, terms: Iterable[tuple[Word, int]], sign: int, out: dict) -> None:
    for w, c in terms:
        k = (a,) + w
        out[k] = out.get(k, 0) + sign * c


def _bilinear(u: NcPoly, v: NcPoly, on_words) -> NcPoly:
    out: dict[Word, int] = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            for w, c in on_words(wu, wv):
                out[w] = out.get(w, 0) + cu * cv * c
    return NcPoly({w: c for w, c in out.items() if c})


# ---------------------------------------------------------------------------
# shuffle


@functools.lru_cache(maxsize=1 << 17)
def shuffle_words(u: Word, v: Word) -> Tuple[tuple[Word, int], ...]:
    """u ш v for monomials, as a tuple of (word, coefficient) pairs."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict[Word, int] = {}
    _prepend(u[0], shuffle_words(u[1:], v), 1, out)
    _prepend(v[0], shuffle_words(u, v[1:]), 1, out)
    return tuple((w, c) for w, c in out.items() if c)


def shuffle(u: NcPoly, v: NcPoly) -> NcPoly:
    return _bilinear(u, v, shuffle_words)


def shuffle_perm_oracle(u: Word, v: Word) -> NcPoly:
    """Sum over all (n, m)-interleavings, enumerated as position subsets for ``u``."""
    n, m = len(u), len(v)
    out: dict[Word, int] = {}
    for slots in itertools.combinations(range(n + m), n):
        chosen = set(slots)
        iu, iv = iter(u), iter(v)
        w = tuple(next(iu) if k in chosen else next(iv) for k in range(n + m))
        out[w] = out.get(w, 0) + 1
    return NcPoly(out)


# ---------------------------------------------------------------------------
# generalized stuffle


@functools.lru_cache(maxsize=1 << 17)
def stuffle_words(u: Word, v: Word) -> Tuple[tuple[Word, int], ...]:
    """u * v for monomials: e_a u' * e_b v' = e_ab (u' * v + u * v' - e_0 (u' * v'))."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    ab = u[0] * v[0]
    inner: dict[Word, int] = {}
    for w, c in stuffle_words(u[1:], v):
        inner[w] = inner.get(w, 0) + c
    for w, c in stuffle_words(u, v[1:]):
        inner[w] = inner.get(w, 0) + c
    for w, c in stuffle_words(u[1:], v[1:]):
        k = (ZERO,) + w
        inner[k] = inner.get(k, 0) - c
    return tuple(((ab,) + w, c) for w, c in inner.items() if c)


def stuffle(u: NcPoly, v: NcPoly) -> NcPoly:
    return _bilinear(u, v, stuffle_words)


def stuffle_graph(n: int, m: int) -> tuple[set[tuple[int, int]], set[tuple[tuple[int, int], tuple[int, int]]]]:
    """Vertices and edges of the lattice graph for degrees (n, m), in doubled coordinates.

    A vertex (x, y) of the half-integer lattice is stored as (2x, 2y).
    Integer vertices have even coordinates; half-integer ones have odd.
    """
    verts = {(1, 1)}
    for X in range(2, 2 * n + 3):
        for Y in range(2, 2 * m + 3):
            if (X - Y) % 2 == 0:
                verts.add((X, Y))
    edges = set()
    for X, Y in verts:
        steps = [(1, 1)]
        if X % 2 == 0 and Y % 2 == 0:
            steps += [(2, 0), (0, 2)]
        for dx, dy in steps:
            if (X + dx, Y + dy) in verts:
                edges.add(((X, Y), (X + dx, Y + dy)))
    return verts, edges


@functools.lru_cache(maxsize=64)
def stuffle_paths(n: int, m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All paths from (1/2, 1/2) to (n+1, m+1), doubled coordinates."""
    verts, edges = stuffle_graph(n, m)
    succ: dict[tuple[int, int], list] = {}
    for p, q in edges:
        succ.setdefault(p, []).append(q)
    end = (2 * n + 2, 2 * m + 2)

    def walk(path):
        last = path[-1]
        if last == end:
            yield tuple(path)
            return
        for q in sorted(succ.get(last, ())):
            path.append(q)
            yield from walk(path)
            path.pop()

    return tuple(walk([(1, 1)]))


def stuffle_paths_oracle(u: Word, v: Word) -> NcPoly:
    """Signed sum over lattice paths; half-integer vertices carry e_0 and a factor -1."""
    n, m = len(u), len(v)
    if n == 0 or m == 0:
        raise EmptyWordInput("the path expansion needs two non-constant monomials")
    a = tuple(u) + (ONE,)
    b = tuple(v) + (ONE,)
    label = {(2 * x + 2, 2 * yy + 2): ax * by for x, ax in enumerate(a) for yy, by in enumerate(b)}
    out: dict[Word, int] = {}
    for path in stuffle_paths(n, m):
        letters = []
        sign = 1
        for X, Y in path[1:-1]:
            if X % 2:
                letters.append(ZERO)
                sign = -sign
            else:
                letters.append(label[X, Y])
        w = tuple(letters)
        out[w] = out.get(w, 0) + sign
    return NcPoly(out)


# ---------------------------------------------------------------------------
# the algebra h^1 of letters z_{k,a}

HLetter = Tuple[int, RatFun]
HWord = Tuple[HLetter, ...]


def hletter(k: int, a: RatLike) -> HLetter:
    a = as_ratfun(a)
    if k < 1:
        raise ValueError(f"index k must be positive, got {k}")
    if not a:
        raise ValueError("the letter z_{k,a} needs a nonzero a")
    return (int(k), a)


class HPoly:
    """Integer combination of words in the letters z_{k,a}; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[HWord, int] | Iterable[tuple[HWord, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[HWord, int] = {}
        for w, c in items:
            if c:
                acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def monomial(cls, w: Iterable[HLetter], coeff: int = 1) -> "HPoly":
        return cls({tuple(hletter(k, a) for k, a in w): coeff})

    @classmethod
    def one(cls) -> "HPoly":
        return cls({(): 1})

    def items(self):
        return iter(self._terms.items())

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, HPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "HPoly") -> "HPoly":
        return HPoly(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return HPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return HPoly({w: other * c for w, c in self._terms.items()})
        if isinstance(other, HPoly):
            return HPoly(
                (u + v, cu * cv) for u, cu in self._terms.items() for v, cv in other._terms.items()
            )
        return NotImplemented

    __rmul__ = __mul__

    def sorted_terms(self):
        def key(wc):
            w = wc[0]
            return (len(w), tuple((k, a.sort_key()) for k, a in w))

        return sorted(self._terms.items(), key=key, reverse=True)

    def __repr__(self):
        from .parsing import format_hexpr

        return f"HPoly({format_hexpr(self)!r})"

    def __str__(self):
        from .parsing import format_hexpr

        return format_hexpr(self)


def y(*letters: tuple[int, RatLike]) -> HPoly:
    """``y((2, 1), (1, -1))`` is the monomial z_{2,1} z_{1,-1}."""
    return HPoly.monomial(letters)


@functools.lru_cache(maxsize=1 << 16)
def hbar_words(u: HWord, v: HWord) -> Tuple[tuple[HWord, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    (k, a), (l, b) = u[0], v[0]
    ab = a * b
    out: dict[HWord, int] = {}
    for head, (x, yy) in (((k, ab), (u[1:], v)), ((l, ab), (u, v[1:])), ((k + l, ab), (u[1:], v[1:]))):
        for w, c in hbar_words(x, yy):
            key = (head,) + w
            out[key] = out.get(key, 0) + c
    return tuple((w, c) for w, c in out.items() if c)


def hbar_stuffle(u: HPoly, v: HPoly) -> HPoly:
    out: dict[HWord, int] = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            for w, c in hbar_words(wu, wv):
                out[w] = out.get(w, 0) + cu * cv * c
    return HPoly(out)


def embed_i(h: HPoly) -> NcPoly:
    """The algebra map z_{k,a} -> -e_a e_0^(k-1)."""
    out: dict[Word, int] = {}
    for w, c in h.items():
        letters: list[RatFun] = []
        for k, a in w:
            letters.append(a)
            letters.extend([ZERO] * (k - 1))
        key = tuple(letters)
        out[key] = out.get(key, 0) + (-1) ** len(w) * c
    return NcPoly(out)


def all_words(alphabet: Iterable[RatLike], max_len: int, min_len: int = 0) -> list[Word]:
    letters = [as_ratfun(a) for a in alphabet]
    out: list[Word] = []
    for n in range(min_len, max_len + 1):
        out.extend(itertools.product(letters, repeat=n))
    return out

