import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alcove.rootdata import build_root_datum, pair
from alcove.weyl import (
    apply_simple,
    dominant_rep,
    dominant_shifted,
    fold_to_dominant,
    orbit,
    orbit_size,
    signed_orbit,
    stabilizer_order,
)

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
A3 = build_root_datum("A", 3)

weights3 = st.lists(st.integers(-6, 6), min_size=3, max_size=3).map(tuple)


def test_apply_simple_examples():
    assert apply_simple(A1, 1, (3,)) == (-3,)
    assert apply_simple(A2, 1, (1, 0)) == (-1, 1)
    with pytest.raises(IndexError):
        apply_simple(A2, 0, (1, 0))
    with pytest.raises(IndexError):
        apply_simple(A2, 3, (1, 0))


@given(weights3, st.integers(1, 3))
def test_apply_simple_involution(lam, i):
    assert apply_simple(A3, i, apply_simple(A3, i, lam)) == lam


def test_orbit_examples():
    assert orbit(A1, (2,)) == {(2,), (-2,)}
    assert len(orbit(A2, (1, 0))) == 3
    assert orbit(A2, (0, 0)) == {(0, 0)}
    assert len(orbit(build_root_datum("E", 6), (1, 0, 0, 0, 0, 0))) == 27


@given(weights3)
def test_orbit_stabilizer(lam):
    orb = orbit(A3, lam)
    assert orbit_size(A3, lam) * stabilizer_order(A3, lam) == A3.weyl_order
    assert sum(1 for x in orb if min(x) >= 0) == 1
    assert dominant_rep(A3, lam) in orb


def test_dominant_rep_examples():
    assert dominant_rep(A1, (-3,)) == (3,)
    assert dominant_rep(A2, (-1, 1)) == (1, 0)
    assert dominant_rep(A2, (2, 5)) == (2, 5)


def test_stabilizer_examples():
    assert stabilizer_order(A2, (0, 0)) == 6
    assert stabilizer_order(A2, (1, 0)) == 2
    assert stabilizer_order(A1, (1,)) == 1


def test_dominant_shifted_examples():
    assert dominant_shifted(A1, (-3,)) == ((1,), -1)
    assert dominant_shifted(A1, (-1,)) is None
    assert dominant_shifted(A2, (-2, 1)) == ((0, 0), -1)
    assert dominant_shifted(A2, (3, 1)) == ((3, 1), 1)


@given(weights3)
def test_dominant_shifted_singularity(lam):
    shifted = tuple(c + 1 for c in lam)
    singular = any(pair(A3, shifted, beta) == 0 for beta in A3.positive_roots)
    res = dominant_shifted(A3, lam)
    assert (res is None) == singular
    if res is not None:
        mu, sign = res
        assert min(mu) >= 0
        assert tuple(c + 1 for c in mu) in orbit(A3, shifted)


@pytest.mark.parametrize("datum", [A2, A3])
def test_sign_matches_random_words(datum):
    # fold an explicit random word applied to a dominant regular weight
    rng = random.Random(7)
    for _ in range(200):
        nu = tuple(rng.randrange(1, 5) for _ in range(datum.rank))
        word = [rng.randrange(1, datum.rank + 1) for _ in range(rng.randrange(12))]
        x = nu
        for i in word:
            x = apply_simple(datum, i, x)
        assert fold_to_dominant(datum, x) == (nu, (-1) ** len(word))
        lam = tuple(c - 1 for c in x)
        assert dominant_shifted(datum, lam) == (tuple(c - 1 for c in nu), (-1) ** len(word))


def test_signed_orbit():
    s = signed_orbit(A2, (1, 1))
    assert len(s) == 6 and sum(s.values()) == 0
    assert s[(1, 1)] == 1 and s[(-1, 2)] == -1
    with pytest.raises(ValueError):
        signed_orbit(A2, (1, 0))
