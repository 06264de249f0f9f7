"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.  Time limits are wall-clock and pinned below
together with the numerical tolerances.
"""

import itertools
import random
import time

import pytest

from alcove import cli, fusion, oracle
from alcove.affine import circ, enumerate_domains, strip_complement_check
from alcove.charring import SymElem, f_elem, mul, steinberg, value_at_one
from alcove.fusion import Kind, build_table, check_table
from alcove.rootdata import build_root_datum, pair, quantum_dim, weight_mults, weyl_dim
from alcove.smallring import normal_form, rmul
from alcove.weyl import orbit

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
A3 = build_root_datum("A", 3)
TABLE_GRID = [(A1, 5), (A1, 7), (A2, 5), (A2, 7), (A3, 5)]
PR_GRID = [(A1, 5), (A1, 7), (A2, 5), (A3, 5)]

# numerical tolerances
RESIDUAL_TOL = 1e-6  # oracle solution vs. nearest integer, before rounding
DRIFT_TOL = 1e-8  # oracle solution vs. exact constant
WALL_TOL = 1e-9  # |quantum_dim| on a wall
HOM_TOL = 1e-9  # evaluation homomorphism, relative

# wall-clock limits in seconds
LIMITS = {1: 1, 2: 30, 3: 30, 4: 300, 5: 60, 6: 60, 7: 60, 8: 120, 9: 10, 10: 10, 11: 120}


class timer:
    def __init__(self, number):
        self.limit = LIMITS[number]

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s > {self.limit}s"


@pytest.mark.criterion(1, "dimension identities |X|, |Xhat|, |Xbar|, |Xreg|")
def test_c1_dimensions():
    # clear the memo so the timing covers the enumeration itself
    enumerate_domains.cache_clear()
    with timer(1):
        expected = {
            (A1, 5): (4, 3, 3, 2),
            (A2, 5): (6, 7, 7, 2),
            (A1, 7): (6, 4, 4, 3),
        }
        for (datum, l), sizes in expected.items():
            d = enumerate_domains(datum, l)
            assert (len(d.X), len(d.Xhat), len(d.Xbar), len(d.Xreg)) == sizes
            assert len(d.Xreg) == len(d.X) // datum.index_of_connection


def _oracle_grid(kind):
    for datum, l in TABLE_GRID:
        table = build_table(datum, l, kind)
        # build_table already checks these; repeat them explicitly here
        assert all(c >= 0 and c.denominator == 1 for c in table.constants.values())
        check_table(table)  # associativity is exhaustive below 40 basis elements
        assert len(table.basis) <= 40
        rep = oracle.compare_tables(datum, l, kind, table)
        assert rep.passed, rep.details
        assert rep.details["max_residual"] < RESIDUAL_TOL
        assert rep.details["max_drift"] < DRIFT_TOL


@pytest.mark.criterion(2, "VR_MINUS tables equal oracle tables")
def test_c2_vr_minus_oracle():
    with timer(2):
        _oracle_grid(Kind.VR_MINUS)
        assert len(build_table(A1, 5, Kind.VR_MINUS).basis) == 4


@pytest.mark.criterion(3, "VR_PLUS tables equal oracle tables")
def test_c3_vr_plus_oracle():
    with timer(3):
        _oracle_grid(Kind.VR_PLUS)
        t = build_table(A1, 5, Kind.VR_PLUS)
        idx = {w: k for k, w in enumerate(t.basis)}
        assert t.product(idx[(1,)], idx[(1,)]) == {idx[(0,)]: 2, idx[(2,)]: 1}
        assert t.product(idx[(2,)], idx[(2,)]) == {idx[(1,)]: 1, idx[(0,)]: 2}


@pytest.mark.criterion(4, "[P(lam)][P(mu)] = [St] sum_nu n [P(nu)] on all of Xhat^2")
def test_c4_pr_products():
    with timer(4):
        for datum, l in PR_GRID:
            rep = fusion.check_all_pr_products(datum, l)
            n = len(enumerate_domains(datum, l).Xhat)
            assert rep.passed, rep.details["failures"][:2]
            assert rep.details["pairs"] == n * (n + 1) // 2


def _propor_pairs(datum, l):
    st = steinberg(datum, l)
    proj = {lam: normal_form(datum, l, mul(datum, st, f_elem(lam)))
            for lam in enumerate_domains(datum, l).P_l}
    for lam in proj:
        for i in range(datum.rank):
            yield lam, proj[lam], proj[circ(datum, l, i, lam)]


@pytest.mark.xfail(strict=True, raises=AssertionError, reason=(
    "exact equality is false: value_at_one descends to the restricted ring and "
    "gives 375 vs 750 for lam=(1,0), s_1 o lam=(4,1) at A2 l=5"))
@pytest.mark.criterion(5, "nf(chSt f(lam)) = nf(chSt f(z o lam)) exactly (equality form)")
def test_c5_orbit_exact_equality():
    with timer(5):
        # holds for A1, where every moved weight has a trivial stabilizer
        for datum, l in [(A1, 5), (A1, 7)]:
            assert all(a == b for _, a, b in _propor_pairs(datum, l))
        for datum, l in PR_GRID[2:]:
            bad = [lam for lam, a, b in _propor_pairs(datum, l) if a != b]
            assert not bad, f"{datum.name} l={l}: {len(bad)} pairs differ, e.g. {bad[0]}"


def test_c5_orbit_proportional_form():
    # the proportionality that does hold, with constant |W_mu| / |W_lam|
    with timer(5):
        for datum, l in PR_GRID:
            rep = fusion.check_propor(datum, l)
            assert rep.passed, rep.details["failures"][:5]
            assert rep.details["pairs"] == l**datum.rank * datum.rank
        a2 = fusion.check_propor(A2, 5).details
        assert (a2["unweighted_equal"], a2["pairs"]) == (34, 50)
        d, st = A2, steinberg(A2, 5)
        dims = [value_at_one(d, mul(d, st, f_elem(lam))) for lam in [(1, 0), (4, 1)]]
        assert dims == [375, 750]


@pytest.mark.criterion(6, "Ann(Rad) = span of the projective characters")
def test_c6_annihilator_of_radical():
    with timer(6):
        for datum, l, dim in [(A1, 5, 3), (A2, 5, 7)]:
            rep = fusion.check_socle(datum, l)
            assert rep.passed, rep.details
            assert rep.details["dim_pr"] == rep.details["dim_ann"] == dim


@pytest.mark.criterion(7, "codim of the image of J equals |Xreg|")
def test_c7_restricted_verlinde_codim():
    with timer(7):
        for datum, l in [(A1, 5), (A2, 5)]:
            rep = fusion.check_bJ_codim(datum, l)
            assert rep.passed, rep.details
            assert rep.details["codim"] == 2


@pytest.mark.criterion(8, "affine-stabilizer character identity on the weight box")
def test_c8_stabilizer_identity():
    with timer(8):
        for datum in (A1, A2):
            rep = fusion.check_thm_pr_box(datum, 5, lam_height=15, mu_height=2)
            assert rep.passed, rep.details["failures"][:2]
            assert rep.details["singular_mu_cases"] > 0
        # the f(lam - l mu) variant is logged as failing at this point
        single = fusion.check_thm_pr(A1, 5, (5,), (1,))
        assert single.passed and single.details["printed_form_holds"] is False


@pytest.mark.criterion(9, "quantum dimension vanishes on walls")
def test_c9_wall_vanishing():
    with timer(9):
        l = 5
        for datum in (A1, A2, A3):
            walls = 0
            for lam in fusion.weight_box(datum.rank, 3 * l):
                shifted = tuple(c + 1 for c in lam)
                if any(pair(datum, shifted, beta) % l == 0 for beta in datum.positive_roots):
                    walls += 1
                    assert abs(quantum_dim(datum, lam, l)) < WALL_TOL, lam
            assert walls > 0


@pytest.mark.criterion(10, "strip complement equals (l-1)rho + P_+")
def test_c10_strips():
    with timer(10):
        for datum, l in itertools.product((A1, A2), (5, 7)):
            rep = strip_complement_check(datum, l, 3 * l)
            assert rep.passed, rep.details


@pytest.mark.criterion(11, "infrastructure: Freudenthal, nf, oracle, CLI determinism")
def test_c11_infrastructure(tmp_path):
    with timer(11):
        # Freudenthal multiplicities sum to the Weyl dimension
        for datum in (A1, A2, A3, build_root_datum("D", 4)):
            for lam in fusion.weight_box(datum.rank, 4):
                mults = weight_mults(datum, lam)
                total = sum(m * len(orbit(datum, mu)) for mu, m in mults.items())
                assert total == weyl_dim(datum, lam)
        # normal form is a ring homomorphism
        rng = random.Random(11)
        for datum, l in [(A1, 5), (A1, 7), (A2, 5), (A2, 7)]:
            for _ in range(10):
                a, b = (SymElem({tuple(rng.randrange(3 * l // datum.rank + 1)
                                       for _ in range(datum.rank)): rng.randrange(-3, 4)
                                 for _ in range(3)}) for _ in range(2))
                assert normal_form(datum, l, mul(datum, a, b)) == rmul(
                    datum, l, normal_form(datum, l, a), normal_form(datum, l, b))
        # evaluation points are multiplicative
        for datum, l in TABLE_GRID:
            for kind in Kind:
                rep = oracle.check_homomorphism(datum, l, kind, pairs=20)
                assert rep.passed and rep.details["max_relative_error"] < HOM_TOL
        # identical runs give byte-identical output
        for cmd in ("fusion", "vrplus", "prbar"):
            outs = []
            for k in range(2):
                path = tmp_path / f"{cmd}{k}.json"
                argv = [cmd, "--family", "A", "--rank", "2", "-l", "5", "--json", str(path)]
                assert cli.run(argv) == 0
                outs.append(path.read_bytes())
            assert outs[0] == outs[1]
