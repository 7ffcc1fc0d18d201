from math import comb

import numpy as np
import pytest

from dmax.constructions import (ConstructionSpec, UnsupportedOrderError, binary_maximal,
                                binary_maximal_size, check_lift_hypothesis, cube, hadamard_matrix,
                                hadamard_set)
from dmax.maximality import verdict_infinite
from dmax.words import PointSet, diameter, distance


def test_cube():
    S = cube(2, 2)
    assert len(S) == 4 and diameter(S) == 2
    assert cube(3, 1).members == ((1,), (2,), (3,))
    assert verdict_infinite(cube(2, 3), 3).maximal


@pytest.mark.parametrize("d,size", [(2, 4), (3, 8), (4, 16), (5, 32), (6, 85)])
def test_binary_maximal_sizes(d, size):
    S = binary_maximal(d)
    assert len(S) == size == binary_maximal_size(d)
    assert size > comb(3 * d // 2, d)
    assert diameter(S) == d
    assert S.r == 3 * (d // 2) + d % 2


def test_binary_maximal_d3_by_enumeration():
    # S_odd for k=1: subsets A of [4] with A & [3] in {{}, 2-subsets of [3]}
    expected = set()
    for mask in range(16):
        A = {i for i in range(4) if mask >> i & 1}
        low = A - {3}
        if len(low) in (0, 2):
            expected.add(tuple(2 if i in A else 1 for i in range(4)))
    assert set(binary_maximal(3).members) == expected


def test_binary_maximal_rejects_small_d():
    with pytest.raises(ValueError):
        binary_maximal(1)


@pytest.mark.parametrize("d", [1, 2, 4, 6, 8, 10, 12])
def test_hadamard_sets_are_equidistant(d):
    S = hadamard_set(d)
    assert len(S) == 2 * d
    for i, a in enumerate(S.members):
        for b in S.members[i + 1:]:
            assert distance(a, b) == d


def test_hadamard_d2_words():
    assert set(hadamard_set(2).members) == {(1, 1, 1, 1), (1, 2, 1, 2), (1, 1, 2, 2), (1, 2, 2, 1)}


def test_hadamard_normalized():
    H = hadamard_matrix(12)
    assert (H[0] == 1).all() and (H[:, 0] == 1).all()
    assert np.array_equal(H @ H.T, 12 * np.eye(12))


def test_unsupported_order():
    with pytest.raises(UnsupportedOrderError):
        hadamard_set(14)  # order 28 needs Paley II or Williamson


def test_construction_spec():
    assert ConstructionSpec("cube", 3, 2).build() == cube(3, 2)
    assert ConstructionSpec("hadamard", 2, 4).order == 8
    with pytest.raises(ValueError):
        ConstructionSpec("binary_even", 3, 4)
    with pytest.raises(ValueError):
        ConstructionSpec("hadamard", 2, 3)  # order 6


def test_lift_hypothesis_examples():
    ok, wit = check_lift_hypothesis(hadamard_set(2), 2)
    assert ok
    for (a, i), b in wit.items():
        assert b[i] == a[i] and distance(a, b) == 2
    ok, _ = check_lift_hypothesis(PointSet(2, 2, ((1, 2),)), 0)
    assert ok
    ok, wit = check_lift_hypothesis(PointSet(2, 2, ((1, 1), (2, 2))), 2)
    assert not ok and wit[((1, 1), 0)] is None


def test_lift_hypothesis_implies_maximal_over_bigger_alphabet():
    cases = [hadamard_set(2), hadamard_set(4), binary_maximal(2), binary_maximal(4), cube(2, 2)]
    checked = 0
    for S in cases:
        d = diameter(S)
        ok, _ = check_lift_hypothesis(S, d)
        if ok and 3 ** S.r <= 10**6:
            assert verdict_infinite(S.with_alphabet(3), d).maximal
            checked += 1
    assert checked >= 3
