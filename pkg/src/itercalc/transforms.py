"""Mobius pullbacks, the sign anti-automorphism and the duality map."""

from __future__ import annotations

from .errors import UnsupportedLetter
from .ncalgebra import NcPoly, Word, linear_map
from .ratfield import (
    GAMMA_Z,
    INFINITY,
    ONE,
    Z,
    ZERO,
    GradingMap,
    MobiusMap,
    RatFun,
    bracket,
    mobius_apply,
    mobius_inverse,
)


def _expand_product(factors: list[dict]) -> dict:
    """Multiply out letter images given as {letter: coeff} dicts."""
    acc: dict[Word, int] = {(): 1}
    for f in factors:
        nxt: dict[Word, int] = {}
        for w, c in acc.items():
            for x, d in f.items():
                k = w + (x,)
                nxt[k] = nxt.get(k, 0) + c * d
        acc = {w: c for w, c in nxt.items() if c}
    return acc


def letter_image(g: MobiusMap, x: RatFun) -> dict:
    """gamma^*(e_x) as {letter: coeff}, with e_inf = 0."""
    out: dict[RatFun, int] = {}
    gx = mobius_apply(g, x)
    ginf = mobius_apply(g, INFINITY)
    if gx is not INFINITY:
        out[gx] = out.get(gx, 0) + 1
    if ginf is not INFINITY:
        out[ginf] = out.get(ginf, 0) - 1
    return {k: c for k, c in out.items() if c}


def gamma_star(g: MobiusMap, a: NcPoly) -> NcPoly:
    """Algebra map e_x -> e_{g(x)} - e_{g(inf)}; any term with a letter at infinity vanishes."""
    cache: dict[RatFun, dict] = {}

    def image(x: RatFun) -> dict:
        if x not in cache:
            cache[x] = letter_image(g, x)
        return cache[x]

    return linear_map(a, lambda w: _expand_product([image(x) for x in w]))


def phi(a: NcPoly) -> NcPoly:
    """Anti-automorphism e_x -> -e_x: reverse each word, sign (-1)^length."""
    return NcPoly({tuple(reversed(w)): (-1) ** len(w) * c for w, c in a.items()})


_TAU = {ZERO: {Z: 1, ONE: -1}, ONE: {Z: 1, ZERO: -1}, Z: {Z: 1}}


def tau_z(a: NcPoly) -> NcPoly:
    """Duality on words over {0, 1, z}: reverse, then substitute letter by letter."""
    for x in a.letters():
        if x not in _TAU:
            raise UnsupportedLetter(f"tau_z is defined on {{0, 1, z}} only, got letter {x}")
    return linear_map(a, lambda w: _expand_product([_TAU[x] for x in reversed(w)]))


def tau_z_mobius(a: NcPoly) -> NcPoly:
    """Duality computed as phi composed with the pullback along x -> z(x-1)/(x-z)."""
    for x in a.letters():
        if x not in _TAU:
            raise UnsupportedLetter(f"tau_z is defined on {{0, 1, z}} only, got letter {x}")
    return phi(gamma_star(GAMMA_Z, a))


def tau_z_inverse(a: NcPoly) -> NcPoly:
    """Inverse of tau_z built from the inverse matrix, not from the involution property."""
    return gamma_star(mobius_inverse(GAMMA_Z), phi(a))


def epsilon_gamma(g: MobiusMap, grading: GradingMap, x: RatFun) -> int:
    return bracket(grading, g.det) - 2 * bracket(grading, g.c * x + g.d)
