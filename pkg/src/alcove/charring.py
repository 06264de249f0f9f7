"""The character ring C[P]^W in the orbit-sum basis.

An element is a finitely supported map from dominant weights to rationals,
read as ``sum c_lam f(lam)`` where ``f(lam)`` is the sum of ``e^eta`` over the
W-orbit of ``lam`` (each orbit element once).
"""

from __future__ import annotations

import cmath
import math
from collections import defaultdict
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache

from .rootdata import RootDatum, Weight, pair, pair_weights, weight_mults
from .weyl import dominant_rep, dominant_shifted, orbit


class SymElem(Mapping):
    """Immutable W-symmetric element; zero coefficients are pruned."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for lam, c in (terms or {}).items():
            lam = tuple(lam)
            if any(x < 0 for x in lam):
                raise ValueError(f"orbit-sum key {lam} is not dominant")
            c = Fraction(c)
            if c:
                clean[lam] = c
        self._terms = clean
        self._hash = None

    def __getitem__(self, lam):
        return self._terms[tuple(lam)]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, SymElem):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "SymElem(0)"
        body = " + ".join(f"{c}*f{lam}" for lam, c in sorted(self._terms.items()))
        return f"SymElem({body})"

    def __add__(self, other):
        if not isinstance(other, SymElem):
            return NotImplemented
        out = dict(self._terms)
        for lam, c in other._terms.items():
            out[lam] = out.get(lam, 0) + c
        return SymElem(out)

    def __neg__(self):
        return SymElem({lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, SymElem):
            raise TypeError("use charring.mul(datum, a, b) for ring products")
        return SymElem({lam: c * scalar for lam, c in self._terms.items()})

    __rmul__ = __mul__

    @property
    def terms(self) -> dict[Weight, Fraction]:
        return dict(self._terms)

    def height(self) -> int:
        """Largest coordinate sum in the support (0 for the zero element)."""
        return max((sum(lam) for lam in self._terms), default=0)


ZERO = SymElem()


def f_elem(lam: Weight) -> SymElem:
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise ValueError(f"f({lam}) needs a dominant weight")
    return SymElem({lam: 1})


def one(datum: RootDatum) -> SymElem:
    return f_elem((0,) * datum.rank)


@lru_cache(maxsize=1 << 14)
def _chi(datum: RootDatum, lam: Weight) -> SymElem:
    return SymElem(weight_mults(datum, lam))


def chi_elem(datum: RootDatum, lam: Weight) -> SymElem:
    """Weyl character of a dominant highest weight, in the f basis."""
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise ValueError(f"chi({lam}) needs a dominant weight; resolve signs first")
    return _chi(datum, lam)


def chi_any(datum: RootDatum, lam: Weight) -> SymElem:
    """chi(lam) for an arbitrary weight: eps(w) chi(w . lam), or 0 if singular."""
    folded = dominant_shifted(datum, lam)
    if folded is None:
        return ZERO
    mu, sign = folded
    return chi_elem(datum, mu) if sign == 1 else -chi_elem(datum, mu)


def f_any(datum: RootDatum, lam: Weight) -> SymElem:
    """f(lam) for an arbitrary weight, using f(w lam) = f(lam)."""
    return f_elem(dominant_rep(datum, lam))


def steinberg(datum: RootDatum, l: int) -> SymElem:
    from .affine import validate_l

    validate_l(datum, l)
    return chi_elem(datum, tuple(l - 1 for _ in range(datum.rank)))


def steinberg_weight(datum: RootDatum, l: int) -> Weight:
    return tuple(l - 1 for _ in range(datum.rank))


@lru_cache(maxsize=1 << 20)
def f_product(datum: RootDatum, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """f(lam) * f(mu) = sum n_nu f(nu); coefficients are counts of orbit pairs
    summing to the dominant weight nu."""
    a, b = orbit(datum, lam), orbit(datum, mu)
    if len(a) > len(b):
        a, b = b, a
    out: dict[Weight, int] = defaultdict(int)
    for eta in a:
        for zeta in b:
            s = tuple(x + y for x, y in zip(eta, zeta))
            if min(s) >= 0:
                out[s] += 1
    return dict(out)


def mul(datum: RootDatum, a: SymElem, b: SymElem) -> SymElem:
    if len(a) > len(b):
        a, b = b, a
    out: dict[Weight, Fraction] = defaultdict(Fraction)
    for lam, c in a.items():
        for mu, d in b.items():
            cd = c * d
            pair_ = (lam, mu) if lam <= mu else (mu, lam)
            for nu, n in f_product(datum, *pair_).items():
                out[nu] += cd * n
    return SymElem(out)


def klimyk_product(datum: RootDatum, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """chi(lam) chi(mu) = sum c_nu chi(nu) by the Brauer-Klimyk rule."""
    lam, mu = tuple(lam), tuple(mu)
    from .rootdata import weyl_dim

    # expand the smaller module into weights
    if weyl_dim(datum, lam) < weyl_dim(datum, mu):
        lam, mu = mu, lam
    out: dict[Weight, int] = defaultdict(int)
    for dom, m in weight_mults(datum, mu).items():
        for eta in orbit(datum, dom):
            folded = dominant_shifted(datum, tuple(x + y for x, y in zip(lam, eta)))
            if folded is not None:
                nu, sign = folded
                out[nu] += sign * m
    result = {nu: c for nu, c in out.items() if c}
    if any(c < 0 for c in result.values()):
        raise ArithmeticError(f"negative tensor multiplicity in chi{lam} chi{mu}")
    return result


def from_chi(datum: RootDatum, coeffs: Mapping[Weight, int | Fraction]) -> SymElem:
    """sum c_nu chi(nu) rewritten in the f basis."""
    out = ZERO
    for nu, c in coeffs.items():
        out = out + chi_elem(datum, nu) * c
    return out


def to_chi(datum: RootDatum, a: SymElem) -> dict[Weight, Fraction]:
    """Inverse of :func:`from_chi`; unitriangular in the dominance order."""
    rho = datum.rho
    rest = dict(a.terms)
    out = {}
    while rest:
        top = max(rest, key=lambda lam: (pair_weights(datum, lam, rho), lam))
        c = rest[top]
        out[top] = c
        for mu, m in chi_elem(datum, top).items():
            v = rest.get(mu, 0) - c * m
            if v:
                rest[mu] = v
            else:
                rest.pop(mu, None)
    return out


def value_at_one(datum: RootDatum, a: SymElem) -> Fraction:
    return sum((c * len(orbit(datum, lam)) for lam, c in a.items()), Fraction(0))


def _phase(k: int | Fraction, l: int) -> complex:
    r = Fraction(k, l) if isinstance(k, int) else k / l
    r -= math.floor(r)
    return cmath.exp(2j * math.pi * float(r))


def eval_at(datum: RootDatum, a: SymElem, beta, l: int) -> complex:
    """Evaluate at K_beta for beta in the root lattice: e^eta -> q^<eta, beta>."""
    beta = tuple(beta)
    total = 0j
    for lam, c in a.items():
        s = 0j
        for eta in orbit(datum, lam):
            s += _phase(pair(datum, eta, beta) % l, l)
        total += float(c) * s
    return total
