"""Numerical re-derivation of both fusion tables from evaluation homomorphisms.

Both quotient algebras are semisimple, so each is the algebra of functions on
a finite set of points.  Evaluating the basis at those points gives a square
matrix V, and the constants n_ij = V^-1 (V_i * V_j) are recovered by a linear
solve.  This is independent of the folding code in :mod:`alcove.fusion`.

* VR_MINUS: the points exp(2 pi i (mu + rho) / l) for mu in X, at which every
  generator chi(lam) + chi(s . lam) of the Verlinde ideal vanishes.
* VR_PLUS: the points K_beta for beta in Q / lQ up to W, where e^{l nu} = 1.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .affine import enumerate_domains, validate_l
from .charring import SymElem, chi_any, f_elem, mul
from .fusion import FusionTable, Kind, build_table
from .report import Report
from .rootdata import RootDatum, Weight, pair
from .weyl import orbit, signed_orbit

# All numerical tolerances of the oracle.
HOMOMORPHISM_TOL = 1e-9  # relative, per evaluation point
IDEAL_TOL = 1e-9  # generators of the Verlinde ideal must evaluate below this
ROUNDING_TOL = 1e-6  # max distance of a recovered constant from an integer
AGREEMENT_TOL = 1e-8  # max distance of a recovered constant from the exact one
SINGULAR_TOL = 1e-6  # smallest singular value after row normalization


class OracleError(ArithmeticError):
    pass


def _phase(r: Fraction) -> complex:
    # reduce mod 1 exactly before going to floating point
    r -= math.floor(r)
    return cmath.exp(2j * math.pi * float(r))


def _point_form(datum: RootDatum, point: Weight) -> tuple[tuple[int, ...], int]:
    """``(v, d)`` with <eta, point> = (eta . v) / d for every weight eta."""
    col = [sum(datum.cartan_inverse[i][j] * point[j] for j in range(datum.rank))
           for i in range(datum.rank)]
    d = math.lcm(*(Fraction(c).denominator for c in col))
    return tuple(int(c * d) for c in col), d


def phase_sum(datum: RootDatum, a: SymElem, point: Weight, l: int) -> complex:
    """Evaluate ``a`` at e^eta -> exp(2 pi i <eta, point> / l), point a weight."""
    v, d = _point_form(datum, point)
    modulus = d * l
    total = 0j
    for lam, c in a.items():
        s = 0j
        for eta in orbit(datum, lam):
            k = sum(x * y for x, y in zip(eta, v)) % modulus
            s += cmath.exp(2j * math.pi * k / modulus)
        total += float(c) * s
    return total


def root_eval(datum: RootDatum, a: SymElem, beta, l: int) -> complex:
    """Evaluate ``a`` at K_beta, beta in root coordinates: e^eta -> q^<eta, beta>."""
    total = 0j
    for lam, c in a.items():
        s = 0j
        for eta in orbit(datum, lam):
            s += _phase(Fraction(pair(datum, eta, beta) % l, l))
        total += float(c) * s
    return total


def alternating_sum(datum: RootDatum, lam: Weight, point: Weight, l: int) -> complex:
    """sum_w det(w) exp(2 pi i <w(lam + rho), point> / l)."""
    nu = tuple(c + 1 for c in lam)
    v, d = _point_form(datum, point)
    modulus = d * l
    return sum((sign * cmath.exp(2j * math.pi * (sum(x * y for x, y in zip(eta, v)) % modulus)
                                 / modulus)
                for eta, sign in signed_orbit(datum, nu).items()), 0j)


@dataclass(frozen=True)
class EvalTable:
    kind: Kind
    points: tuple
    basis: tuple[Weight, ...]
    values: np.ndarray  # values[point, basis element]

    def __post_init__(self):
        n, m = self.values.shape
        if n != m or n != len(self.points) or m != len(self.basis):
            raise OracleError(f"evaluation table is {n}x{m}, not square over the basis")
        rows = self.values / np.linalg.norm(self.values, axis=1, keepdims=True)
        smin = np.linalg.svd(rows, compute_uv=False).min()
        if smin <= SINGULAR_TOL:
            raise OracleError(f"evaluation table is numerically singular (sigma_min={smin:.3g})")

    def evaluate(self, datum: RootDatum, l: int, a: SymElem) -> np.ndarray:
        """Values of an arbitrary element at every point of the table."""
        if self.kind is Kind.VR_MINUS:
            return np.array([phase_sum(datum, a, _shift(mu), l) for mu in self.points])
        return np.array([root_eval(datum, a, beta, l) for beta in self.points])


def _shift(mu: Weight) -> Weight:
    return tuple(c + 1 for c in mu)


def vr_eval_table(datum: RootDatum, l: int, ideal_samples: int = 40, seed: int = 0) -> EvalTable:
    """phi_mu(chi(lam)) for lam, mu in X, by the alternating-sum formula.

    Checks that each phi_mu kills sampled generators chi(lam) + chi(s . lam)
    of the Verlinde ideal, with s ranging over affine reflections.
    """
    validate_l(datum, l)
    X = enumerate_domains(datum, l).X
    denom = {mu: alternating_sum(datum, (0,) * datum.rank, _shift(mu), l) for mu in X}
    values = np.array([[alternating_sum(datum, lam, _shift(mu), l) / denom[mu] for lam in X]
                       for mu in X])
    table = EvalTable(Kind.VR_MINUS, tuple(X), tuple(X), values)
    rng = random.Random(seed)
    for _ in range(ideal_samples):
        lam = tuple(rng.randrange(l) for _ in range(datum.rank))
        k = rng.randrange(0, 2)
        beta, bw = rng.choice(list(zip(datum.positive_roots, datum.root_weights)))
        shifted = tuple(c + 1 for c in lam)
        t = pair(datum, shifted, beta)
        image = tuple(s - (t - k * l) * a - 1 for s, a in zip(shifted, bw))
        gen = chi_any(datum, lam) + chi_any(datum, image)
        worst = float(np.abs(table.evaluate(datum, l, gen)).max())
        if worst >= IDEAL_TOL:
            raise OracleError(f"generator chi{lam} + chi{image} evaluates to {worst:.3g}")
    return table


def root_orbit(l: int, datum: RootDatum, beta) -> frozenset:
    """W-orbit of beta in Q/lQ, in root coordinates."""
    cartan = datum.cartan
    start = tuple(b % l for b in beta)
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(datum.rank):
                c = sum(cartan[i][j] * b[j] for j in range(datum.rank))
                img = tuple((x - c) % l if j == i else x for j, x in enumerate(b))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(seen)


def root_orbit_reps(datum: RootDatum, l: int) -> tuple:
    reps = set()
    for beta in itertools.product(range(l), repeat=datum.rank):
        reps.add(min(root_orbit(l, datum, beta), key=lambda x: (sum(x), x)))
    return tuple(sorted(reps, key=lambda x: (sum(x), x)))


def vrplus_eval_table(datum: RootDatum, l: int) -> EvalTable:
    """psi_beta(f(lam)) for lam in Xhat and beta over W-orbits of Q/lQ."""
    validate_l(datum, l)
    xhat = enumerate_domains(datum, l).Xhat
    points = root_orbit_reps(datum, l)
    if len(points) != len(xhat):
        raise OracleError(f"{len(points)} orbits on Q/lQ but |Xhat| = {len(xhat)}")
    values = np.array([[root_eval(datum, f_elem(lam), beta, l) for lam in xhat]
                       for beta in points])
    return EvalTable(Kind.VR_PLUS, points, tuple(xhat), values)


def eval_table(datum: RootDatum, l: int, kind: Kind | str) -> EvalTable:
    kind = Kind(kind)
    return vr_eval_table(datum, l) if kind is Kind.VR_MINUS else vrplus_eval_table(datum, l)


def solve_constants(table: EvalTable, i: int, j: int) -> np.ndarray:
    """Unrounded solution n of V n = V_i * V_j."""
    v = table.values
    return np.linalg.solve(v, v[:, i] * v[:, j])


def constants_from_eval(table: EvalTable, i: int, j: int) -> tuple[dict[int, int], float]:
    """Recover {k: n_ij^k} by a linear solve and rounding.

    Raises :class:`OracleError` if the solution is not within the rounding
    tolerance of an integer vector.
    """
    sol = solve_constants(table, i, j)
    rounded = np.rint(sol.real)
    residual = float(np.abs(sol - rounded).max())
    if residual >= ROUNDING_TOL:
        raise OracleError(f"residual {residual:.3g} at (i, j) = ({i}, {j})")
    return {k: int(c) for k, c in enumerate(rounded) if c}, residual


def oracle_constants(table: EvalTable) -> tuple[dict[tuple[int, int, int], int], float]:
    out: dict[tuple[int, int, int], int] = {}
    worst = 0.0
    for i, j in itertools.combinations_with_replacement(range(len(table.basis)), 2):
        n, residual = constants_from_eval(table, i, j)
        worst = max(worst, residual)
        for k, c in n.items():
            out[(i, j, k)] = out[(j, i, k)] = c
    return out, worst


def compare_tables(datum: RootDatum, l: int, kind: Kind | str,
                   exact: FusionTable | None = None) -> Report:
    """Exact folding table vs. oracle-recovered table."""
    kind = Kind(kind)
    exact = exact if exact is not None else build_table(datum, l, kind)
    table = eval_table(datum, l, kind)
    details = {"datum": datum.name, "l": l, "kind": kind.value, "dim": len(table.basis)}
    if table.basis != exact.basis:
        details["error"] = "basis mismatch"
        return Report("oracle", False, details)
    try:
        recovered, residual = oracle_constants(table)
    except OracleError as exc:
        details["error"] = str(exc)
        return Report("oracle", False, details)
    n = len(table.basis)
    drift = 0.0
    for i, j in itertools.product(range(n), repeat=2):
        target = np.array([float(exact.constants.get((i, j, k), 0)) for k in range(n)])
        drift = max(drift, float(np.abs(solve_constants(table, i, j) - target).max()))
    as_int = {key: int(c) for key, c in exact.constants.items()}
    mismatches = sorted(set(as_int.items()) ^ set(recovered.items()))
    details.update(max_residual=residual, max_drift=drift, mismatches=mismatches[:10])
    return Report("oracle", not mismatches and drift < AGREEMENT_TOL, details)


def _random_elem(rng: random.Random, rank: int, height: int, terms: int = 3) -> SymElem:
    out = {}
    for _ in range(terms):
        lam = tuple(rng.randrange(height + 1) for _ in range(rank))
        out[lam] = out.get(lam, 0) + rng.randrange(-3, 4)
    return SymElem(out)


def check_homomorphism(datum: RootDatum, l: int, kind: Kind | str,
                       pairs: int = 20, seed: int = 0) -> Report:
    """Every evaluation point is multiplicative on random products."""
    table = eval_table(datum, l, kind)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(pairs):
        a = _random_elem(rng, datum.rank, l)
        b = _random_elem(rng, datum.rank, l)
        va, vb = table.evaluate(datum, l, a), table.evaluate(datum, l, b)
        vab = table.evaluate(datum, l, mul(datum, a, b))
        scale = np.maximum(1.0, np.abs(va * vb))
        worst = max(worst, float((np.abs(vab - va * vb) / scale).max()))
    return Report("oracle-homomorphism", worst < HOMOMORPHISM_TOL, {
        "datum": datum.name, "l": l, "kind": Kind(kind).value, "pairs": pairs,
        "max_relative_error": worst,
    })
