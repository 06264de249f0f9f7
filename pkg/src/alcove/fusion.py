"""Structure constants of the two quotient algebras and the identity checks
relating them to the restricted ring.

``VR_MINUS`` is the Verlinde algebra: classical tensor products of Weyl
characters folded into the alcove X with signs (Kac-Walton).  ``VR_PLUS``
is its counterpart for the natural action of W x lP: products of orbit sums
folded without signs onto Xhat.
"""

from __future__ import annotations

import enum
import itertools
import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .affine import (
    circ,
    enumerate_domains,
    fold_natural,
    fold_shifted_affine,
    in_alcove,
    validate_l,
)
from .charring import (
    SymElem,
    ZERO,
    chi_any,
    f_any,
    f_elem,
    klimyk_product,
    mul,
    one,
    steinberg,
    to_chi,
)
from .report import Report
from .rootdata import RootDatum, Weight, build_root_datum
from .smallring import RestrictedElem, annihilator, normal_form, radical_basis, restricted_ring
from .weyl import orbit, stabilizer_order

log = logging.getLogger(__name__)


class Kind(enum.Enum):
    VR_MINUS = "VR_MINUS"
    VR_PLUS = "VR_PLUS"


class TableInvariantError(AssertionError):
    pass


@dataclass(frozen=True)
class FusionTable:
    kind: Kind
    family: str
    rank: int
    l: int
    basis: tuple[Weight, ...]
    constants: dict[tuple[int, int, int], Fraction]

    @property
    def datum(self) -> RootDatum:
        return build_root_datum(self.family, self.rank)

    def array(self) -> np.ndarray:
        n = len(self.basis)
        out = np.zeros((n, n, n), dtype=np.int64)
        for (i, j, k), c in self.constants.items():
            out[i, j, k] = int(c)
        return out

    def product(self, i: int, j: int) -> dict[int, Fraction]:
        return {k: c for (a, b, k), c in self.constants.items() if (a, b) == (i, j)}

    def __eq__(self, other):
        if not isinstance(other, FusionTable):
            return NotImplemented
        return (self.kind, self.family, self.rank, self.l, self.basis, self.constants) == (
            other.kind, other.family, other.rank, other.l, other.basis, other.constants)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def vr_constants(datum: RootDatum, l: int, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """Verlinde fusion chi(lam) chi(mu) = sum N^nu chi(nu) modulo J, nu in X."""
    for w in (lam, mu):
        _require(in_alcove(datum, l, w), f"{tuple(w)} is not in the alcove X for l={l}")
    out: dict[Weight, int] = defaultdict(int)
    for nu, c in klimyk_product(datum, lam, mu).items():
        folded = fold_shifted_affine(datum, l, nu)
        if folded is not None:
            rep, sign = folded
            out[rep] += sign * c
    return {nu: c for nu, c in out.items() if c}


def natural_fold_coefficient(datum: RootDatum, l: int, nu: Weight) -> tuple[Weight, Fraction]:
    """``(rep, c)`` with f(nu) = c f(rep) in the natural-action quotient.

    The quotient lives on Q/lQ, where ``sum_w e^{w nu}`` depends only on nu mod
    lP; as f counts each orbit element once, c = |W_rep| / |W_nu|.
    """
    rep = fold_natural(datum, l, nu)
    return rep, Fraction(stabilizer_order(datum, rep), stabilizer_order(datum, nu))


def vrplus_constants(datum: RootDatum, l: int, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """f(lam) f(mu) = sum n^nu f(nu) in the natural-action quotient, nu in Xhat."""
    xhat = set(enumerate_domains(datum, l).Xhat)
    for w in (lam, mu):
        _require(tuple(w) in xhat, f"{tuple(w)} is not in Xhat for l={l}")
    out: dict[Weight, Fraction] = defaultdict(Fraction)
    for nu, c in mul(datum, f_elem(lam), f_elem(mu)).items():
        rep, ratio = natural_fold_coefficient(datum, l, nu)
        out[rep] += c * ratio
    result = {}
    for nu, c in out.items():
        if c:
            if c.denominator != 1:
                raise TableInvariantError(f"non-integral constant {c} at f{lam} f{mu} -> f{nu}")
            result[nu] = int(c)
    return result


def build_table(datum: RootDatum, l: int, kind: Kind | str) -> FusionTable:
    kind = Kind(kind)
    validate_l(datum, l)
    doms = enumerate_domains(datum, l)
    if kind is Kind.VR_MINUS:
        basis, engine = doms.X, vr_constants
    else:
        basis, engine = doms.Xhat, vrplus_constants
    index = {w: k for k, w in enumerate(basis)}
    constants: dict[tuple[int, int, int], Fraction] = {}
    for i, j in itertools.combinations_with_replacement(range(len(basis)), 2):
        for nu, c in engine(datum, l, basis[i], basis[j]).items():
            k = index[nu]
            constants[(i, j, k)] = constants[(j, i, k)] = Fraction(c)
    table = FusionTable(kind, datum.family, datum.rank, l, tuple(basis), constants)
    check_table(table)
    return table


def check_table(table: FusionTable, samples: int = 2000, seed: int = 0) -> None:
    """Raise :class:`TableInvariantError` unless the table is a commutative,
    associative, unital table of nonnegative integers.

    Associativity is exhaustive up to 40 basis elements and sampled beyond.
    """
    n = len(table.basis)
    for key, c in table.constants.items():
        if c.denominator != 1 or c < 0:
            raise TableInvariantError(f"constant {key} = {c} is not a nonnegative integer")
    arr = table.array()
    if not np.array_equal(arr, arr.transpose(1, 0, 2)):
        raise TableInvariantError("table is not symmetric in (i, j)")
    zero = table.basis.index((0,) * table.rank)
    if not np.array_equal(arr[zero], np.eye(n, dtype=np.int64)):
        raise TableInvariantError("identity row is not the Kronecker delta")
    if n <= 40:
        left = np.einsum("ijk,kmp->ijmp", arr, arr)
        right = np.einsum("jmk,ikp->ijmp", arr, arr)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise TableInvariantError(f"associativity fails at (i,j,m,p)={tuple(bad)}")
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            i, j, m = (rng.randrange(n) for _ in range(3))
            if not np.array_equal(arr[i, j] @ arr[:, m], arr[j, m] @ arr[i]):
                raise TableInvariantError(f"associativity fails at (i,j,m)=({i},{j},{m})")


# ---------------------------------------------------------------------------
# the projective ideal


def pr_basis(datum: RootDatum, l: int) -> list[RestrictedElem]:
    """[P(lam)] = normal form of chSt * f(lam) for lam in Xhat, in Xhat order."""
    validate_l(datum, l)
    st = steinberg(datum, l)
    return [normal_form(datum, l, mul(datum, st, f_elem(lam)))
            for lam in enumerate_domains(datum, l).Xhat]


def check_pr_product(datum: RootDatum, l: int, lam: Weight, mu: Weight,
                     basis: list[RestrictedElem] | None = None) -> Report:
    """[P(lam)][P(mu)] == [St] * sum_nu n^nu [P(nu)] exactly in R."""
    doms = enumerate_domains(datum, l)
    basis = basis if basis is not None else pr_basis(datum, l)
    by_weight = dict(zip(doms.Xhat, basis))
    ring = restricted_ring(datum, l)
    n = vrplus_constants(datum, l, lam, mu)
    lhs = ring.mul(by_weight[tuple(lam)], by_weight[tuple(mu)])
    combo = RestrictedElem(l)
    for nu, c in n.items():
        combo = combo + by_weight[nu] * c
    rhs = ring.mul(ring.normal_form(steinberg(datum, l)), combo)
    details = {"datum": datum.name, "l": l, "lam": lam, "mu": mu, "n": n}
    if lhs != rhs:
        details.update(lhs=lhs.coords, rhs=rhs.coords)
    return Report("pr-product", lhs == rhs, details)


def check_all_pr_products(datum: RootDatum, l: int) -> Report:
    doms = enumerate_domains(datum, l)
    basis = pr_basis(datum, l)
    failures = []
    for lam, mu in itertools.combinations_with_replacement(doms.Xhat, 2):
        rep = check_pr_product(datum, l, lam, mu, basis)
        if not rep.passed:
            failures.append(rep.details)
    npairs = len(doms.Xhat) * (len(doms.Xhat) + 1) // 2
    return Report("pr-product", not failures,
                  {"datum": datum.name, "l": l, "pairs": npairs, "failures": failures})


def _affine_stabilizer_sum(datum: RootDatum, l: int, lam: Weight, mu: Weight) -> SymElem:
    # The subgroup generated by s_{alpha_i, <mu, alpha_i>} is W conjugated by the
    # shifted translation to l*mu - rho:  w -> (x -> w(x + rho - l mu) + l mu - rho).
    nu = tuple(a + 1 - l * b for a, b in zip(lam, mu))
    mult = stabilizer_order(datum, nu)
    total = ZERO
    for eta in orbit(datum, nu):
        total = total + chi_any(datum, tuple(e + l * b - 1 for e, b in zip(eta, mu)))
    return total * mult


def check_thm_pr(datum: RootDatum, l: int, lam: Weight, mu: Weight) -> Report:
    """sum_{w in W_mu} chi(w . lam) == chi(l mu - rho) * sum_{w in W} e^{w(lam + rho - l mu)}.

    Also records whether the variant with f(lam - l mu) in place of the full
    W-sum holds; that variant is known to fail and is only logged.
    """
    lam, mu = tuple(lam), tuple(mu)
    lhs = _affine_stabilizer_sum(datum, l, lam, mu)
    corner = chi_any(datum, tuple(l * b - 1 for b in mu))
    nu = tuple(a + 1 - l * b for a, b in zip(lam, mu))
    rhs = mul(datum, corner, f_any(datum, nu) * stabilizer_order(datum, nu))
    printed = mul(datum, corner, f_any(datum, tuple(a - l * b for a, b in zip(lam, mu))))
    singular_mu = any(
        sum(b * r for b, r in zip(mu, beta)) == 0 for beta in datum.positive_roots
    )
    passed = lhs == rhs and (not singular_mu or lhs == ZERO)
    printed_holds = lhs == printed
    details = {
        "datum": datum.name, "l": l, "lam": lam, "mu": mu,
        "singular_mu": singular_mu, "printed_form_holds": printed_holds,
    }
    if not passed or not printed_holds:
        details.update(lhs=lhs.terms, rhs=rhs.terms, printed_rhs=printed.terms)
    if not printed_holds:
        log.info("f(lam - l mu) form fails at %s l=%d lam=%s mu=%s", datum.name, l, lam, mu)
    return Report("thm-pr", passed, details)


def weight_box(rank: int, height: int, dominant: bool = True):
    if dominant:
        return [x for x in itertools.product(range(height + 1), repeat=rank) if sum(x) <= height]
    return [x for x in itertools.product(range(-height, height + 1), repeat=rank)
            if sum(map(abs, x)) <= height]


def check_thm_pr_box(datum: RootDatum, l: int, lam_height: int | None = None,
                     mu_height: int = 2) -> Report:
    """Run :func:`check_thm_pr` over dominant lam with coordinate sum <= lam_height
    (default 3l) and all mu with sum |mu_i| <= mu_height."""
    lam_height = 3 * l if lam_height is None else lam_height
    failures, printed_failures, singular = [], [], 0
    count = 0
    for mu in weight_box(datum.rank, mu_height, dominant=False):
        for lam in weight_box(datum.rank, lam_height):
            rep = check_thm_pr(datum, l, lam, mu)
            count += 1
            singular += rep.details["singular_mu"]
            if not rep.passed:
                failures.append(rep.details)
            if not rep.details["printed_form_holds"]:
                printed_failures.append([list(lam), list(mu)])
    return Report("thm-pr", not failures, {
        "datum": datum.name, "l": l, "cases": count, "singular_mu_cases": singular,
        "failures": failures, "printed_form_failures": len(printed_failures),
        "printed_form_failure_sample": printed_failures[:5],
    })


def reflections(datum: RootDatum):
    """Reflections s_beta of W for positive roots beta, as weight maps."""
    for beta, bw in zip(datum.positive_roots, datum.root_weights):
        yield beta, bw


def _bullet_reflect(datum: RootDatum, l: int, lam: Weight, beta, bw) -> Weight:
    shifted = tuple(c + 1 for c in lam)
    k = sum(s * b for s, b in zip(shifted, beta))
    return tuple((s - k * a - 1) % l for s, a in zip(shifted, bw))


def vr_fold(datum: RootDatum, l: int, a: SymElem) -> dict[Weight, Fraction]:
    """Image of ``a`` in the Verlinde algebra, on the basis chi(nu), nu in X."""
    out: dict[Weight, Fraction] = defaultdict(Fraction)
    for nu, c in to_chi(datum, a).items():
        folded = fold_shifted_affine(datum, l, nu)
        if folded is not None:
            out[folded[0]] += folded[1] * c
    return {nu: c for nu, c in out.items() if c}


def restricted_quotient_codim(datum: RootDatum, l: int) -> int:
    """dim of Vr / (f(l w_i) - |W w_i|), computed inside the Verlinde algebra.

    Since R = C[P]^W / (f(l nu) - |W nu|), this equals the codimension of the
    image of J in R; it serves as an independent count for :func:`check_bJ_codim`.
    """
    table = build_table(datum, l, Kind.VR_MINUS)
    arr = table.array()
    index = {w: k for k, w in enumerate(table.basis)}
    n = len(table.basis)
    rows = []
    for i in range(datum.rank):
        w = tuple(l if k == i else 0 for k in range(datum.rank))
        g = f_elem(w) - one(datum) * len(orbit(datum, tuple(int(k == i) for k in range(datum.rank))))
        gv = np.zeros(n, dtype=object)
        for nu, c in vr_fold(datum, l, g).items():
            gv[index[nu]] = c
        for b in range(n):
            rows.append(list(gv @ arr[:, b].astype(object)))
    return n - linalg.rank(rows)


def check_bJ_codim(datum: RootDatum, l: int) -> Report:
    """codim of span{nf chi(lam) + nf chi(s * lam)} in R equals |Xreg|.

    Also compares the span with the projective ideal, for information.
    """
    doms = enumerate_domains(datum, l)
    ring = restricted_ring(datum, l)
    rows = []
    for lam in doms.P_l:
        base = ring.normal_form(chi_any(datum, lam))
        for beta, bw in reflections(datum):
            other = _bullet_reflect(datum, l, lam, beta, bw)
            rows.append(ring.to_vector(base + ring.normal_form(chi_any(datum, other))))
    dim_j = linalg.rank(rows)
    codim = ring.dim - dim_j
    expected = len(doms.X) // datum.index_of_connection
    independent = restricted_quotient_codim(datum, l)
    pr_rows = [ring.to_vector(x) for x in pr_basis(datum, l)]
    return Report("bj", codim == len(doms.Xreg) == expected == independent, {
        "datum": datum.name, "l": l, "dim_R": ring.dim, "dim_J": dim_j, "codim": codim,
        "Xreg": len(doms.Xreg), "X_over_PQ": expected, "codim_via_Vr": independent,
        "J_equals_Pr": linalg.same_span(rows, pr_rows),
    })


def check_socle(datum: RootDatum, l: int) -> Report:
    """span(pr_basis) == Ann(Rad R), both of dimension |Xbar|."""
    doms = enumerate_domains(datum, l)
    ring = restricted_ring(datum, l)
    pr_rows = [ring.to_vector(x) for x in pr_basis(datum, l)]
    ann_rows = [ring.to_vector(x) for x in annihilator(datum, l, radical_basis(datum, l))]
    dim_pr, dim_ann = linalg.rank(pr_rows), linalg.rank(ann_rows)
    equal = linalg.same_span(pr_rows, ann_rows)
    return Report("socle", equal and dim_pr == dim_ann == len(doms.Xbar), {
        "datum": datum.name, "l": l, "dim_pr": dim_pr, "dim_ann": dim_ann,
        "Xbar": len(doms.Xbar), "equal_spans": equal,
    })


def check_propor(datum: RootDatum, l: int) -> Report:
    """|W_lam| nf(chSt f(lam)) == |W_mu| nf(chSt f(mu)) for mu = s_i o lam,
    every lam in P_l and simple s_i.

    The report also counts the pairs where the unweighted equality holds.
    """
    doms = enumerate_domains(datum, l)
    st = steinberg(datum, l)
    ring = restricted_ring(datum, l)
    cache: dict[Weight, RestrictedElem] = {}

    def proj(lam):
        if lam not in cache:
            cache[lam] = ring.normal_form(mul(datum, st, f_elem(lam)))
        return cache[lam]

    failures, unweighted_equal, pairs = [], 0, 0
    for lam in doms.P_l:
        for i in range(datum.rank):
            mu = circ(datum, l, i, lam)
            pairs += 1
            a, b = proj(lam), proj(mu)
            unweighted_equal += a == b
            if a * stabilizer_order(datum, lam) != b * stabilizer_order(datum, mu):
                failures.append([list(lam), i + 1, list(mu)])
    return Report("propor", not failures, {
        "datum": datum.name, "l": l, "weights": len(doms.P_l), "pairs": pairs,
        "unweighted_equal": unweighted_equal, "failures": failures,
    })
