"""Affine Weyl group machinery at level ``l``.

Two actions matter here.  The shifted action of the affine Weyl group
W x lQ folds weights into the first dominant alcove

    X = {lam dominant : <lam + rho, theta> < l},

with a sign per reflection.  Reduced modulo lP, the finite Weyl group acts on
the restricted weights P_l = {0..l-1}^rank in two ways: naturally
(``w o x = w(x) mod lP``) and shifted (``w * x = (w . x) mod lP``).  Orbit
representatives of those actions make up the domains Xhat, Xbar and Xreg.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .report import Report
from .rootdata import RootDatum, Weight, pair
from .weyl import _reflect

DEFAULT_SIZE_BOUND = 10**6


class InvalidLevel(ValueError):
    pass


class SizeBoundExceeded(ValueError):
    pass


class DomainError(RuntimeError):
    """An orbit has no member in the region its representative must come from."""

    def __init__(self, action: str, orbit, region: str):
        self.action = action
        self.orbit = sorted(orbit)
        self.region = region
        super().__init__(
            f"{action}-orbit {self.orbit[:6]}{'...' if len(self.orbit) > 6 else ''} "
            f"has no element in {region}"
        )


def level_problems(datum: RootDatum, l: int) -> list[str]:
    problems = []
    if l % 2 == 0:
        problems.append(f"l={l} is even (l must be odd)")
    if l < datum.coxeter_number:
        problems.append(
            f"l={l} is below the Coxeter number h={datum.coxeter_number} of {datum.name}"
        )
    g = math.gcd(l, datum.cartan_det)
    if g != 1:
        problems.append(
            f"gcd(l={l}, det Cartan={datum.cartan_det}) = {g} (coprimality required)"
        )
    return problems


def validate_l(datum: RootDatum, l: int) -> None:
    problems = level_problems(datum, l)
    if problems:
        raise InvalidLevel(f"invalid level for {datum.name}: " + "; ".join(problems))


def check_size(datum: RootDatum, l: int, size_bound: int | None = None) -> None:
    bound = DEFAULT_SIZE_BOUND if size_bound is None else size_bound
    if l**datum.rank > bound:
        raise SizeBoundExceeded(
            f"l^rank = {l}^{datum.rank} = {l**datum.rank} exceeds the size bound {bound}"
        )


def theta_pairing(datum: RootDatum, lam: Weight) -> int:
    return pair(datum, lam, datum.highest_root)


def in_alcove(datum: RootDatum, l: int, lam: Weight) -> bool:
    """Membership in the first dominant alcove X."""
    return all(c >= 0 for c in lam) and theta_pairing(datum, lam) + datum.coxeter_number - 1 < l


def in_natural_alcove(datum: RootDatum, l: int, lam: Weight) -> bool:
    """Membership in the closed non-shifted alcove {dominant, <lam, theta> <= l}."""
    return all(c >= 0 for c in lam) and theta_pairing(datum, lam) <= l


# ---------------------------------------------------------------------------
# shifted affine folding


def fold_shifted_affine(datum: RootDatum, l: int, lam: Weight) -> tuple[Weight, int] | None:
    """Fold ``lam`` into X under the shifted affine action.

    Returns ``(mu, sign)`` with mu in X, or ``None`` when the orbit meets a wall.
    """
    return _fold_shifted_affine(datum, l, tuple(lam))


@lru_cache(maxsize=1 << 18)
def _fold_shifted_affine(datum: RootDatum, l: int, lam: Weight):
    nu = tuple(c + 1 for c in lam)
    theta = datum.highest_root
    theta_w = datum.root_weights[-1]
    sign = 1
    while True:
        i = next((k for k, c in enumerate(nu) if c < 0), None)
        if i is not None:
            nu = _reflect(datum, i, nu)
            sign = -sign
            continue
        t = pair(datum, nu, theta)
        if t > l:
            # s_{theta,1}: x -> x - (<x, theta> - l) theta
            nu = tuple(c - (t - l) * a for c, a in zip(nu, theta_w))
            sign = -sign
            continue
        break
    if 0 in nu or pair(datum, nu, theta) == l:
        return None
    return tuple(c - 1 for c in nu), sign


# ---------------------------------------------------------------------------
# actions on restricted weights


def reduce_mod_lP(lam: Weight, l: int) -> Weight:
    return tuple(c % l for c in lam)


def circ(datum: RootDatum, l: int, i: int, x: Weight) -> Weight:
    """s_i o x for a 0-based simple index."""
    return reduce_mod_lP(_reflect(datum, i, x), l)


def bullet(datum: RootDatum, l: int, i: int, x: Weight) -> Weight:
    """s_i * x for a 0-based simple index."""
    shifted = tuple(c + 1 for c in x)
    y = _reflect(datum, i, shifted)
    return tuple((c - 1) % l for c in y)


def _closure(datum: RootDatum, l: int, x: Weight, step) -> frozenset[Weight]:
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for i in range(datum.rank):
                z = step(datum, l, i, y)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=1 << 18)
def circ_orbit(datum: RootDatum, l: int, x: Weight) -> frozenset[Weight]:
    return _closure(datum, l, reduce_mod_lP(x, l), circ)


@lru_cache(maxsize=1 << 18)
def bullet_orbit(datum: RootDatum, l: int, x: Weight) -> frozenset[Weight]:
    return _closure(datum, l, reduce_mod_lP(x, l), bullet)


def _canonical_key(x: Weight):
    return (sum(x), x)


def _circ_rep(datum: RootDatum, l: int, orb) -> Weight:
    # Prefer orbit members in X; otherwise the closed natural alcove, which
    # every orbit meets (it is a fundamental domain of W x lQ acting on P).
    tier = [x for x in orb if in_alcove(datum, l, x)]
    if not tier:
        tier = [x for x in orb if in_natural_alcove(datum, l, x)]
    if not tier:
        raise DomainError("circ", orb, "the closed natural alcove")
    return min(tier, key=_canonical_key)


def _bullet_rep(datum: RootDatum, l: int, orb) -> Weight:
    # Regular orbits always meet X; singular ones (e.g. the Steinberg weight)
    # may not, and fall back to the whole orbit.
    tier = [x for x in orb if in_alcove(datum, l, x)] or list(orb)
    return min(tier, key=_canonical_key)


@lru_cache(maxsize=1 << 18)
def _fold_natural(datum: RootDatum, l: int, x: Weight) -> Weight:
    return _circ_rep(datum, l, circ_orbit(datum, l, x))


def fold_natural(datum: RootDatum, l: int, lam: Weight) -> Weight:
    """Canonical representative in Xhat of the orbit of ``lam`` under W x lP."""
    return _fold_natural(datum, l, reduce_mod_lP(lam, l))


def fold_bullet(datum: RootDatum, l: int, lam: Weight) -> Weight:
    """Canonical representative in Xbar of the shifted orbit of ``lam`` in P_l."""
    lam = tuple(lam)
    if any(not 0 <= c < l for c in lam):
        raise ValueError(f"{lam} is not a restricted weight for l={l}")
    return _fold_bullet(datum, l, lam)


@lru_cache(maxsize=1 << 18)
def _fold_bullet(datum: RootDatum, l: int, x: Weight) -> Weight:
    return _bullet_rep(datum, l, bullet_orbit(datum, l, x))


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class Domains:
    l: int
    X: tuple[Weight, ...]
    P_l: tuple[Weight, ...]
    Xhat: tuple[Weight, ...]
    Xbar: tuple[Weight, ...]
    Xreg: tuple[Weight, ...]

    def to_json(self) -> dict:
        return {
            "l": self.l,
            **{name: [list(w) for w in getattr(self, name)]
               for name in ("X", "P_l", "Xhat", "Xbar", "Xreg")},
        }


def restricted_weights(datum: RootDatum, l: int) -> tuple[Weight, ...]:
    return tuple(itertools.product(range(l), repeat=datum.rank))


def alcove_weights(datum: RootDatum, l: int) -> tuple[Weight, ...]:
    bound = l - datum.coxeter_number
    return tuple(
        sorted((x for x in itertools.product(range(max(bound, 0) + 1), repeat=datum.rank)
                if in_alcove(datum, l, x)), key=_canonical_key)
    )


@lru_cache(maxsize=64)
def enumerate_domains(datum: RootDatum, l: int, size_bound: int | None = None) -> Domains:
    validate_l(datum, l)
    check_size(datum, l, size_bound)
    p_l = restricted_weights(datum, l)
    X = alcove_weights(datum, l)
    xhat = sorted({_fold_natural(datum, l, x) for x in p_l}, key=_canonical_key)
    xbar, xreg = set(), set()
    for x in p_l:
        rep = _fold_bullet(datum, l, x)
        xbar.add(rep)
        if len(bullet_orbit(datum, l, x)) == datum.weyl_order:
            xreg.add(rep)
    for rep in xreg:
        if not in_alcove(datum, l, rep):
            raise DomainError("bullet", bullet_orbit(datum, l, rep), "the alcove X")
    xbar = sorted(xbar, key=_canonical_key)
    xreg = sorted(xreg, key=_canonical_key)
    if len(xhat) != len(xbar):
        raise AssertionError(f"|Xhat|={len(xhat)} != |Xbar|={len(xbar)}")
    assert len(p_l) == l**datum.rank
    return Domains(l=l, X=X, P_l=p_l, Xhat=tuple(xhat), Xbar=tuple(xbar), Xreg=tuple(xreg))


# ---------------------------------------------------------------------------
# strips


def dominant_box(rank: int, height_bound: int):
    """Dominant weights with coordinate sum at most ``height_bound``."""
    for x in itertools.product(range(height_bound + 1), repeat=rank):
        if sum(x) <= height_bound:
            yield x


def strip_complement_check(datum: RootDatum, l: int, height_bound: int) -> Report:
    """Compare the dominant part of the complement of all strips containing X
    with the translated cone (l-1)rho + P_+, inside a finite box.

    A strip is the open region k*l < <lam + rho, alpha> < (k+1)*l between two
    neighbouring parallel reflection hyperplanes of the shifted action.
    """
    validate_l(datum, l)
    X = alcove_weights(datum, l)

    def values(lam, beta):
        return pair(datum, tuple(c + 1 for c in lam), beta)

    containing = []
    for beta in datum.positive_roots:
        vals = [values(lam, beta) for lam in X]
        for k in range(min(vals) // l - 1, max(vals) // l + 2):
            if all(k * l < v < (k + 1) * l for v in vals):
                containing.append((beta, k))

    def in_some_strip(lam):
        return any(k * l < values(lam, beta) < (k + 1) * l for beta, k in containing)

    box = list(dominant_box(datum.rank, height_bound))
    complement = {lam for lam in box if not in_some_strip(lam)}
    cone = {lam for lam in box if all(c >= l - 1 for c in lam)}
    missing = sorted(cone - complement)
    extra = sorted(complement - cone)
    return Report(
        name="strips",
        passed=not missing and not extra,
        details={
            "datum": datum.name,
            "l": l,
            "height_bound": height_bound,
            "box_size": len(box),
            "strips_containing_X": [[list(b), k] for b, k in containing],
            "complement_size": len(complement),
            "cone_size": len(cone),
            "in_cone_not_complement": missing,
            "in_complement_not_cone": extra,
        },
    )
