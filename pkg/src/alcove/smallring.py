"""The restricted character ring  R = C[P]^W (x)_{C[lP]^W} C.

Elements are written on the basis {[f(lam)] : lam in P_l}.  Reduction to
that basis uses two relations: f(lam0) f(l lam1) = f(lam0 + l lam1) + lower
terms, and f(l lam1) = |W lam1| (its value at 1) in the quotient.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .affine import (
    check_size,
    circ,
    enumerate_domains,
    fold_bullet,
    restricted_weights,
    validate_l,
)
from .charring import SymElem, f_product
from .rootdata import RootDatum, Weight
from .weyl import orbit, stabilizer_order

# Dense multiplication tables are kept up to this dimension (n^3 int64 entries).
TABLE_DIM_LIMIT = 256
_INT64_SAFE = 1 << 62


class RestrictedElem(Mapping):
    """Element of the restricted ring; coordinates on {[f(lam)]}_{lam in P_l}."""

    __slots__ = ("l", "_coords")

    def __init__(self, l: int, coords=None):
        self.l = l
        clean = {}
        for lam, c in (coords or {}).items():
            lam = tuple(lam)
            if any(not 0 <= x < l for x in lam):
                raise ValueError(f"{lam} is not a restricted weight for l={l}")
            c = Fraction(c)
            if c:
                clean[lam] = c
        self._coords = clean

    def __getitem__(self, lam):
        return self._coords[tuple(lam)]

    def __iter__(self):
        return iter(self._coords)

    def __len__(self):
        return len(self._coords)

    def __eq__(self, other):
        if isinstance(other, RestrictedElem):
            return self.l == other.l and self._coords == other._coords
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{c}*[f{lam}]" for lam, c in sorted(self._coords.items()))
        return f"RestrictedElem(l={self.l}, {body or '0'})"

    def _check(self, other):
        if not isinstance(other, RestrictedElem):
            return NotImplemented
        if other.l != self.l:
            raise ValueError(f"mismatched levels l={self.l} and l={other.l}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._coords)
        for lam, c in other._coords.items():
            out[lam] = out.get(lam, 0) + c
        return RestrictedElem(self.l, out)

    def __neg__(self):
        return RestrictedElem(self.l, {k: -c for k, c in self._coords.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, RestrictedElem):
            raise TypeError("use smallring.rmul(datum, l, x, y) for ring products")
        return RestrictedElem(self.l, {k: c * scalar for k, c in self._coords.items()})

    __rmul__ = __mul__

    @property
    def coords(self) -> dict[Weight, Fraction]:
        return dict(self._coords)


def split_weight(lam: Weight, l: int) -> tuple[Weight, Weight]:
    if any(c < 0 for c in lam):
        raise ValueError(f"weight {tuple(lam)} is not dominant")
    return tuple(c % l for c in lam), tuple(c // l for c in lam)


class RestrictedRing:
    """Per-(datum, l) reduction memo and multiplication table."""

    def __init__(self, datum: RootDatum, l: int, size_bound: int | None = None):
        validate_l(datum, l)
        check_size(datum, l, size_bound)
        self.datum = datum
        self.l = l
        self.basis: tuple[Weight, ...] = restricted_weights(datum, l)
        self.index = {lam: k for k, lam in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._reduced: dict[Weight, np.ndarray] = {}
        self._table: np.ndarray | None = None

    # -- conversions -------------------------------------------------------

    def to_vector(self, x: RestrictedElem) -> list[Fraction]:
        if x.l != self.l:
            raise ValueError(f"mismatched levels l={x.l} and l={self.l}")
        v = [Fraction(0)] * self.dim
        for lam, c in x.items():
            v[self.index[lam]] = c
        return v

    def from_vector(self, v) -> RestrictedElem:
        return RestrictedElem(
            self.l, {self.basis[k]: c for k, c in enumerate(v) if c}
        )

    def unit(self) -> RestrictedElem:
        return RestrictedElem(self.l, {(0,) * self.datum.rank: 1})

    def basis_elem(self, lam: Weight) -> RestrictedElem:
        return RestrictedElem(self.l, {tuple(lam): 1})

    # -- reduction ---------------------------------------------------------

    def _unit_vector(self, lam: Weight) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.index[lam]] = 1
        return v

    def reduce_weight(self, lam: Weight) -> np.ndarray:
        """Integer coordinates of [f(lam)] for a dominant weight ``lam``."""
        lam = tuple(lam)
        if lam in self.index:
            return self._unit_vector(lam)
        hit = self._reduced.get(lam)
        if hit is not None:
            return hit
        datum, l = self.datum, self.l
        # explicit stack instead of recursion: reductions chain through many
        # successively lower weights
        stack = [lam]
        while stack:
            top = stack[-1]
            if top in self._reduced:
                stack.pop()
                continue
            lam0, lam1 = split_weight(top, l)
            big = tuple(l * c for c in lam1)
            rel = f_product(datum, *sorted((lam0, big)))
            c_top = rel[top]
            pending = [nu for nu in rel
                       if nu != top and nu not in self.index and nu not in self._reduced]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            # c_top * f(top) = |W lam1| f(lam0) - sum_{nu != top} n_nu f(nu)
            terms = [(len(orbit(datum, lam1)), self._unit_vector(lam0))]
            terms += [(-n, self._vec(nu)) for nu, n in rel.items() if nu != top]
            vec = _combine(terms, self.dim)
            if c_top != 1:
                if np.any(vec % c_top):
                    raise ArithmeticError(f"non-integral reduction of f{top}")
                vec = vec // c_top
            self._reduced[top] = vec
        return self._reduced[lam]

    def _vec(self, nu: Weight) -> np.ndarray:
        return self._unit_vector(nu) if nu in self.index else self._reduced[nu]

    def normal_form(self, a: SymElem) -> RestrictedElem:
        den = 1
        for c in a.values():
            den = math.lcm(den, c.denominator)
        acc = np.zeros(self.dim, dtype=object)
        for lam, c in a.items():
            acc = acc + int(c * den) * self.reduce_weight(lam).astype(object)
        return self.from_vector([Fraction(int(x), den) for x in acc])

    # -- multiplication ----------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        """T[a, b, k]: coordinate k of [f(basis[a])] [f(basis[b])]."""
        if self._table is None:
            if self.dim > TABLE_DIM_LIMIT:
                raise MemoryError(
                    f"dense table of dimension {self.dim} exceeds {TABLE_DIM_LIMIT}"
                )
            n = self.dim
            t = np.zeros((n, n, n), dtype=np.int64)
            for a in range(n):
                for b in range(a, n):
                    t[a, b] = t[b, a] = self.product_vector(self.basis[a], self.basis[b])
            self._table = t
        return self._table

    def product_vector(self, lam: Weight, mu: Weight) -> np.ndarray:
        rel = f_product(self.datum, *sorted((tuple(lam), tuple(mu))))
        return _combine([(n, self.reduce_weight(nu)) for nu, n in rel.items()], self.dim)

    def mul(self, x: RestrictedElem, y: RestrictedElem) -> RestrictedElem:
        if x.l != self.l or y.l != self.l:
            raise ValueError(f"mismatched levels {x.l}, {y.l} for ring at l={self.l}")
        xs, dx = _scaled(self.to_vector(x))
        ys, dy = _scaled(self.to_vector(y))
        if self.dim <= TABLE_DIM_LIMIT:
            t = self.table
            tmax = int(np.abs(t).max()) if t.size else 0
            exact = tmax * sum(map(abs, xs)) * sum(map(abs, ys)) < _INT64_SAFE
            yv = np.array(ys, dtype=np.int64 if exact else object)
            acc = np.zeros(self.dim, dtype=np.int64 if exact else object)
            for a, xa in enumerate(xs):
                if xa:
                    ta = t[a] if exact else t[a].astype(object)
                    acc = acc + xa * (yv @ ta)
        else:
            acc = np.zeros(self.dim, dtype=object)
            for a, xa in enumerate(xs):
                if not xa:
                    continue
                for b, yb in enumerate(ys):
                    if yb:
                        pv = self.product_vector(self.basis[a], self.basis[b])
                        acc = acc + (xa * yb) * pv.astype(object)
        den = dx * dy
        return self.from_vector([Fraction(int(v), den) for v in acc])

    def mult_matrix(self, g: RestrictedElem) -> list[list[Fraction]]:
        """Rows of the matrix of x -> x * g (row k, column a)."""
        m, den = self.int_mult_matrix(g)
        return [[Fraction(int(m[k, a]), den) for a in range(self.dim)]
                for k in range(self.dim)]

    def int_mult_matrix(self, g: RestrictedElem) -> tuple[np.ndarray, int]:
        """``(M, den)`` with M / den the matrix of x -> x * g, M integral."""
        gs, dg = _scaled(self.to_vector(g))
        t = self.table
        tmax = int(np.abs(t).max()) if t.size else 0
        if tmax * sum(map(abs, gs)) < _INT64_SAFE:
            m = np.tensordot(t, np.array(gs, dtype=np.int64), axes=([1], [0]))
        else:
            m = np.tensordot(t.astype(object), np.array(gs, dtype=object), axes=([1], [0]))
        return m.T, dg  # m is indexed (a, k)


def _scaled(v: list[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in v:
        den = math.lcm(den, c.denominator)
    return [int(c * den) for c in v], den


def _combine(terms, dim: int) -> np.ndarray:
    bound = sum(abs(n) * int(np.abs(v).max()) for n, v in terms)
    if bound >= _INT64_SAFE:
        raise OverflowError("reduction coefficients exceed the int64 range")
    out = np.zeros(dim, dtype=np.int64)
    for n, v in terms:
        out += n * v
    return out


@lru_cache(maxsize=32)
def restricted_ring(datum: RootDatum, l: int, size_bound: int | None = None) -> RestrictedRing:
    return RestrictedRing(datum, l, size_bound)


def normal_form(datum: RootDatum, l: int, a: SymElem) -> RestrictedElem:
    return restricted_ring(datum, l).normal_form(a)


def rmul(datum: RootDatum, l: int, x: RestrictedElem, y: RestrictedElem) -> RestrictedElem:
    if x.l != y.l:
        raise ValueError(f"mismatched levels l={x.l} and l={y.l}")
    return restricted_ring(datum, l).mul(x, y)


def radical_basis(datum: RootDatum, l: int) -> list[RestrictedElem]:
    """Basis of the radical of R.

    The radical is the common kernel of the evaluations at the points of
    Q/lQ.  There, ``sum_w e^{w lam}`` depends only on ``lam`` mod lP, so it is
    spanned by ``|W_lam| [f(lam)] - |W_mu| [f(mu)]`` with ``mu = s_i o lam``.
    """
    ring = restricted_ring(datum, l)
    rows = []
    for lam in ring.basis:
        for i in range(datum.rank):
            mu = circ(datum, l, i, lam)
            if mu != lam:
                v = [0] * ring.dim
                v[ring.index[lam]] += stabilizer_order(datum, lam)
                v[ring.index[mu]] -= stabilizer_order(datum, mu)
                rows.append(v)
    return [ring.from_vector(r) for r in linalg.rref(rows)]


def annihilator(datum: RootDatum, l: int, generators) -> list[RestrictedElem]:
    """Basis of {x : x g = 0 for all g in generators}."""
    ring = restricted_ring(datum, l)
    rows = []
    for g in generators:
        rows.extend(ring.int_mult_matrix(g)[0].tolist())
    if not rows:
        return [ring.basis_elem(lam) for lam in ring.basis]
    null = linalg.nullspace(rows, ring.dim)
    return [ring.from_vector(r) for r in linalg.rref(null)]


def blocks(datum: RootDatum, l: int) -> dict[Weight, list[Weight]]:
    """Partition of P_l into shifted orbits, keyed by their Xbar representative."""
    doms = enumerate_domains(datum, l)
    out: dict[Weight, list[Weight]] = {rep: [] for rep in doms.Xbar}
    for lam in doms.P_l:
        out[fold_bullet(datum, l, lam)].append(lam)
    return out
