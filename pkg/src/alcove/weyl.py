"""Finite Weyl group actions on weights.

The group itself is never materialized: orbits come from breadth-first
closure under the simple reflections.
"""

from __future__ import annotations

from functools import lru_cache

from .rootdata import RootDatum, Weight, _check_rank


def apply_simple(datum: RootDatum, i: int, lam: Weight) -> Weight:
    """s_i(lam) for a 1-based simple index ``i``."""
    if not 1 <= i <= datum.rank:
        raise IndexError(f"simple reflection index {i} out of range 1..{datum.rank}")
    return _reflect(datum, i - 1, tuple(lam))


def _reflect(datum: RootDatum, i: int, lam: Weight) -> Weight:
    c = lam[i]
    if c == 0:
        return lam
    col = datum.cartan[i]  # symmetric, so row == column
    return tuple(x - c * a for x, a in zip(lam, col))


@lru_cache(maxsize=1 << 16)
def _orbit(datum: RootDatum, lam: Weight) -> frozenset[Weight]:
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(datum.rank):
                if mu[i]:
                    nu = _reflect(datum, i, mu)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
        frontier = nxt
    return frozenset(seen)


def orbit(datum: RootDatum, lam: Weight) -> frozenset[Weight]:
    lam = tuple(lam)
    _check_rank(datum, lam)
    return _orbit(datum, dominant_rep(datum, lam))


def orbit_size(datum: RootDatum, lam: Weight) -> int:
    return len(orbit(datum, lam))


@lru_cache(maxsize=1 << 18)
def _dominant_rep(datum: RootDatum, lam: Weight) -> Weight:
    mu = lam
    while True:
        i = next((k for k, c in enumerate(mu) if c < 0), None)
        if i is None:
            return mu
        mu = _reflect(datum, i, mu)


def dominant_rep(datum: RootDatum, lam: Weight) -> Weight:
    """The unique dominant element of the W-orbit of ``lam``."""
    return _dominant_rep(datum, tuple(lam))


def fold_to_dominant(datum: RootDatum, lam: Weight) -> tuple[Weight, int]:
    """Fold ``lam`` into the dominant chamber; return it with det(w).

    Always reflects in the smallest index with a negative coordinate.
    """
    mu = tuple(lam)
    sign = 1
    while True:
        i = next((k for k, c in enumerate(mu) if c < 0), None)
        if i is None:
            return mu, sign
        mu = _reflect(datum, i, mu)
        sign = -sign


@lru_cache(maxsize=1 << 18)
def _dominant_shifted(datum: RootDatum, lam: Weight):
    shifted = tuple(c + 1 for c in lam)
    mu, sign = fold_to_dominant(datum, shifted)
    if 0 in mu:
        return None
    return tuple(c - 1 for c in mu), sign


def dominant_shifted(datum: RootDatum, lam: Weight) -> tuple[Weight, int] | None:
    """Dot-action fold: ``(mu, det w)`` with ``mu = w . lam`` and ``mu + rho``
    dominant regular, or ``None`` when ``lam + rho`` is singular."""
    lam = tuple(lam)
    _check_rank(datum, lam)
    return _dominant_shifted(datum, lam)


def stabilizer_order(datum: RootDatum, lam: Weight) -> int:
    size = orbit_size(datum, lam)
    assert datum.weyl_order % size == 0
    return datum.weyl_order // size


def signed_orbit(datum: RootDatum, nu: Weight) -> dict[Weight, int]:
    """``{w(nu): det w}`` for a W-regular weight ``nu``.

    Regularity makes w -> w(nu) a bijection, so the sign is well defined and
    the alternating sum over W becomes a sum over this dictionary.
    """
    nu = tuple(nu)
    dom, sign = fold_to_dominant(datum, nu)
    if 0 in dom:
        raise ValueError(f"weight {nu} is not W-regular")
    signs = {dom: 1}
    frontier = [dom]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(datum.rank):
                eta = _reflect(datum, i, mu)
                if eta not in signs:
                    signs[eta] = -signs[mu]
                    nxt.append(eta)
        frontier = nxt
    assert len(signs) == datum.weyl_order
    if sign != 1:
        signs = {k: sign * v for k, v in signs.items()}
    return signs
