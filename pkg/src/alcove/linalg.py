"""Exact linear algebra over Q by fraction-free integer elimination.

Rows are sequences of ints or Fractions; each is scaled to a primitive
integer row before elimination, so no Fraction arithmetic happens inside
the elimination loop.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

# prime below 2^25: a dot product of up to 2^9 residues stays inside int64
_PRIME = 2**25 - 39


def _to_int_row(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return _primitive([int(x * den) for x in row])


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form up to row scaling.

    Returns ``(rows, pivots)``: primitive integer rows, one per pivot, with a
    positive pivot entry and zeros in every other pivot column.
    """
    work = [r for r in (_to_int_row(row) for row in rows) if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    done: list[list[int]] = []
    for col in range(ncols):
        idx = next((k for k, r in enumerate(work) if r[col]), None)
        if idx is None:
            continue
        p = work.pop(idx)
        if p[col] < 0:
            p = [-x for x in p]
        pc = p[col]
        nxt = []
        for r in work:
            e = r[col]
            if e:
                r = _primitive([pc * x - e * y for x, y in zip(r, p)])
            if any(r):
                nxt.append(r)
        work = nxt
        for k, r in enumerate(done):
            e = r[col]
            if e:
                r = _primitive([pc * x - e * y for x, y in zip(r, p)])
                if r[pivots[k]] < 0:
                    r = [-x for x in r]
                done[k] = r
        done.append(p)
        pivots.append(col)
        if not work:
            break
    return done, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(echelon(rows)[1])


def rref(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form with unit pivots."""
    reduced, pivots = echelon(rows)
    return [[Fraction(x, r[p]) for x in r] for r, p in zip(reduced, pivots)]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} for the matrix with the given rows.

    Tall matrices are first thinned to rows independent modulo a prime; the
    result is then checked exactly against every row, falling back to full
    elimination if the prime was unlucky.
    """
    int_rows = [r for r in (_to_int_row(row) for row in rows) if any(r)]
    if len(int_rows) > 2 * ncols and ncols <= 512:
        picked = [int_rows[k] for k in _independent_mod_p(int_rows, ncols)]
        basis = _nullspace_exact(picked, ncols)
        if _annihilates(int_rows, basis):
            return basis
    return _nullspace_exact(int_rows, ncols)


def _nullspace_exact(rows, ncols: int) -> list[list[Fraction]]:
    reduced, pivots = echelon(rows)
    pivot_set = set(pivots)
    basis = []
    for f in (c for c in range(ncols) if c not in pivot_set):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(reduced, pivots):
            if r[f]:
                v[p] = Fraction(-r[f], r[p])
        basis.append(v)
    return basis


def _independent_mod_p(rows: list[list[int]], ncols: int) -> list[int]:
    """Indices of a maximal subset of rows independent over GF(p)."""
    p = _PRIME
    basis = np.zeros((0, ncols), dtype=np.int64)  # unit pivots, reduced
    pivots: list[int] = []
    picked = []
    for k, row in enumerate(rows):
        r = np.array([x % p for x in row], dtype=np.int64)
        if pivots:
            r = (r - (r[pivots] @ basis) % p) % p
        nz = np.flatnonzero(r)
        if nz.size == 0:
            continue
        c = int(nz[0])
        r = r * pow(int(r[c]), -1, p) % p
        if pivots:
            basis = (basis - np.outer(basis[:, c], r) % p) % p
        basis = np.vstack([basis, r])
        pivots.append(c)
        picked.append(k)
        if len(pivots) == ncols:
            break
    return picked


def _annihilates(rows: list[list[int]], basis: list[list[Fraction]]) -> bool:
    if not basis:
        return True
    cols = np.array([_to_int_row(v) for v in basis], dtype=object).T
    return not np.any(np.array(rows, dtype=object) @ cols)


def in_span(basis_rows: Sequence[Sequence], vec: Sequence) -> bool:
    return rank(list(basis_rows) + [vec]) == rank(basis_rows)


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))
