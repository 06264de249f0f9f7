import random
from fractions import Fraction

import pytest

from alcove import linalg
from alcove.charring import SymElem, chi_elem, f_elem, mul, one, steinberg, value_at_one
from alcove.rootdata import build_root_datum
from alcove.smallring import (
    RestrictedElem,
    annihilator,
    blocks,
    normal_form,
    radical_basis,
    restricted_ring,
    rmul,
    split_weight,
)

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)


def R(l, *pairs):
    return RestrictedElem(l, dict(pairs))


def test_split_weight():
    assert split_weight((6,), 5) == ((1,), (1,))
    assert split_weight((4,), 5) == ((4,), (0,))
    assert split_weight((7, 3), 5) == ((2, 3), (1, 0))
    with pytest.raises(ValueError):
        split_weight((-1,), 5)


def test_restricted_elem():
    x = R(5, ((1,), 2))
    assert x - x == RestrictedElem(5)
    assert (x * Fraction(1, 2))[(1,)] == 1
    with pytest.raises(ValueError):
        RestrictedElem(5, {(5,): 1})
    with pytest.raises(ValueError):
        x + R(7, ((1,), 1))
    with pytest.raises(TypeError):
        x * x


def test_normal_form_examples():
    assert normal_form(A1, 5, f_elem((5,))) == R(5, ((0,), 2))
    assert normal_form(A1, 5, f_elem((6,))) == R(5, ((1,), 2), ((4,), -1))
    a = SymElem({(1,): 3, (4,): -1})
    assert normal_form(A1, 5, a) == R(5, ((1,), 3), ((4,), -1))


def test_rmul_examples():
    f4 = R(5, ((4,), 1))
    assert rmul(A1, 5, f4, f4) == R(5, ((3,), 2), ((2,), -1), ((0,), 2))
    x = R(5, ((1,), 3), ((3,), Fraction(1, 2)))
    assert rmul(A1, 5, x, R(5, ((0,), 1))) == x
    got = normal_form(A1, 5, mul(A1, steinberg(A1, 5), f_elem((1,))))
    assert got == R(5, ((3,), 2), ((1,), 2), ((0,), 2))
    with pytest.raises(ValueError):
        rmul(A1, 5, f4, R(7, ((0,), 1)))


def _random_elem(rng, rank, height):
    return SymElem({tuple(rng.randrange(height + 1) for _ in range(rank)): rng.randrange(-3, 4)
                    for _ in range(3)})


@pytest.mark.parametrize("datum,l", [(A1, 5), (A1, 7), (A2, 5), (A2, 7)])
def test_normal_form_is_homomorphism(datum, l):
    rng = random.Random(l * 10 + datum.rank)
    for _ in range(15):
        a = _random_elem(rng, datum.rank, 3 * l // datum.rank)
        b = _random_elem(rng, datum.rank, 3 * l // datum.rank)
        lhs = normal_form(datum, l, mul(datum, a, b))
        assert lhs == rmul(datum, l, normal_form(datum, l, a), normal_form(datum, l, b))


@pytest.mark.parametrize("datum,l", [(A1, 5), (A2, 5)])
def test_normal_form_kills_ideal(datum, l):
    rng = random.Random(3)
    zero = RestrictedElem(l)
    for _ in range(10):
        nu = tuple(rng.randrange(3) for _ in range(datum.rank))
        g = f_elem(tuple(l * c for c in nu))
        gen = g - one(datum) * value_at_one(datum, g)
        a = _random_elem(rng, datum.rank, 2 * l // datum.rank)
        assert normal_form(datum, l, mul(datum, a, gen)) == zero


def test_ring_dimension():
    ring = restricted_ring(A2, 7)
    assert ring.dim == 49
    t = ring.table
    assert t.shape == (49, 49, 49)
    assert (t[0] == __import__("numpy").eye(49, dtype=int)).all()


def test_radical_examples():
    rad = radical_basis(A1, 5)
    assert len(rad) == 2
    expected = [[0, 1, 0, 0, -1], [0, 0, 1, -1, 0]]
    assert linalg.same_span([restricted_ring(A1, 5).to_vector(x) for x in rad], expected)
    assert len(radical_basis(A2, 5)) == 18
    assert len(radical_basis(A1, 3)) == 1


def test_radical_is_nilpotent():
    ring = restricted_ring(A2, 5)
    for x in radical_basis(A2, 5):
        y = x
        for _ in range(ring.dim):
            y = ring.mul(y, x)
            if not y:
                break
        assert not y


def test_annihilator_examples():
    assert len(annihilator(A1, 5, [])) == 5
    assert annihilator(A1, 5, [R(5, ((0,), 1))]) == []
    ann = annihilator(A1, 5, radical_basis(A1, 5))
    ring = restricted_ring(A1, 5)
    expected = [[1, 0, 1, 0, 1], [1, 1, 0, 1, 0], [1, 1, 1, 0, 0]]
    assert linalg.same_span([ring.to_vector(x) for x in ann], expected)


def test_mult_matrix_matches_mul():
    ring = restricted_ring(A2, 5)
    g = R(5, ((1, 2), 3), ((4, 0), Fraction(-1, 2)))
    m = ring.mult_matrix(g)
    x = R(5, ((2, 2), 1), ((0, 3), 2))
    xv = ring.to_vector(x)
    prod = [sum(m[k][a] * xv[a] for a in range(ring.dim)) for k in range(ring.dim)]
    assert prod == ring.to_vector(ring.mul(x, g))


def test_blocks():
    assert blocks(A1, 5) == {(0,): [(0,), (3,)], (1,): [(1,), (2,)], (4,): [(4,)]}
    b = blocks(A2, 5)
    assert len(b) == 7 and sum(map(len, b.values())) == 25
    assert b[(4, 4)] == [(4, 4)]
