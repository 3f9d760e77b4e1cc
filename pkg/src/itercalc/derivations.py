"""Letter-deleting differential operators on the word algebra."""

from __future__ import annotations

import functools
from typing import Callable, Mapping, Sequence, Union

from .errors import InvalidF, UnsupportedLetter
from .ncalgebra import NcPoly, Word, linear_map
from .ratfield import ONE, Z, ZERO, GradingMap, RatFun, RatLike, as_ratfun, bracket_diff


def _delete(w: Word, i: int) -> Word:
    return w[:i] + w[i + 1 :]


@functools.lru_cache(maxsize=1 << 17)
def partial_word(g: GradingMap, s: RatFun, t: RatFun, w: Word) -> tuple[tuple[Word, int], ...]:
    n = len(w)
    if n == 0:
        return ()
    a = (s,) + w + (t,)
    # jumps[i] = [a_{i+1} - a_i] for i = 0..n
    jumps = [bracket_diff(g, a[i + 1], a[i]) for i in range(n + 1)]
    out: dict[Word, int] = {}
    for i in range(1, n + 1):
        c = jumps[i] - jumps[i - 1]
        if c:
            v = _delete(w, i - 1)
            out[v] = out.get(v, 0) + c
    return tuple((v, c) for v, c in out.items() if c)


def partial(g: GradingMap, s: RatLike, t: RatLike, a: NcPoly) -> NcPoly:
    """The operator with boundary letters (a_0, a_{n+1}) = (s, t), extended linearly."""
    s, t = as_ratfun(s), as_ratfun(t)
    return linear_map(a, lambda w: dict(partial_word(g, s, t, w)))


_ALPHABET = (ZERO, ONE, Z)


def _check_letters(a: NcPoly) -> None:
    for x in a.letters():
        if x not in _ALPHABET:
            raise UnsupportedLetter(f"letter {x} is outside {{0, 1, z}}")


def partial_zc(c: int, a: NcPoly) -> NcPoly:
    """Kronecker-delta form on words over {0, 1, z}; boundary letters (0, 1)."""
    if c not in (0, 1):
        raise ValueError(f"c must be 0 or 1, got {c!r}")
    _check_letters(a)
    target = frozenset((Z, ONE if c else ZERO))

    def on_word(w: Word) -> dict:
        seq = (ZERO,) + w + (ONE,)
        out: dict[Word, int] = {}
        for i in range(1, len(w) + 1):
            k = int(frozenset(seq[i : i + 2]) == target) - int(frozenset(seq[i - 1 : i + 1]) == target)
            if k:
                v = _delete(w, i - 1)
                out[v] = out.get(v, 0) + k
        return out

    return linear_map(a, on_word)


FMap = Union[Sequence[int], Mapping[int, int], Callable[[int], int]]


def partial_with_f(g: GradingMap, s: RatLike, t: RatLike, w: Word, f: FMap) -> NcPoly:
    """Evaluate the derivation through an arbitrary ``f`` that matches the bracket where letters jump.

    ``f`` may be a sequence, a mapping or a callable on ``0..n``; it is only
    constrained at indices ``i`` with ``a_i != a_{i+1}``.
    """
    s, t = as_ratfun(s), as_ratfun(t)
    n = len(w)
    if n == 0:
        return NcPoly.zero()
    fv = [f(i) if callable(f) else f[i] for i in range(n + 1)]
    a = (s,) + tuple(w) + (t,)
    for i in range(n + 1):
        if a[i] != a[i + 1] and fv[i] != bracket_diff(g, a[i + 1], a[i]):
            raise InvalidF(f"f({i}) = {fv[i]} but [a_{i + 1} - a_{i}] = {bracket_diff(g, a[i + 1], a[i])}")
    out: dict[Word, int] = {}

    def add(v: Word, c: int) -> None:
        out[v] = out.get(v, 0) + c

    for i in range(1, n + 1):
        add(_delete(w, i - 1), fv[i] - fv[i - 1])
    if s == a[1]:
        add(_delete(w, 0), fv[0])
    if a[n] == t:
        add(_delete(w, n - 1), -fv[n])
    return NcPoly(out)
