import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmax.constructions import binary_maximal, cube, hadamard_set
from dmax.maximality import (BudgetExceeded, DiameterMismatch, Status, WitnessKind, complete,
                             find_within_radius, search_within_radius, verdict_finite,
                             verdict_infinite)
from dmax.words import PointSet, diameter, distance

from oracles import brute_extendable, brute_within_radius, random_set


def test_find_within_radius_examples():
    S = PointSet(2, 2, ((1, 2), (2, 1)))
    assert find_within_radius(S, 1, S.members) == (1, 1)
    assert find_within_radius(PointSet(2, 2, ((1, 1), (2, 2))), 0) is None
    C = cube(2, 2)
    assert find_within_radius(C, 2, C.members) is None


def test_negative_radius_has_no_witness():
    assert find_within_radius(cube(2, 2), -1) is None


@st.composite
def search_instances(draw):
    n = draw(st.integers(2, 4))
    r = draw(st.integers(1, 7 if n == 2 else 5))
    m = draw(st.integers(1, 7))
    S = random_set(random.Random(draw(st.integers(0, 10**9))), n, r, m)
    R = draw(st.integers(0, r))
    use_exclude = draw(st.booleans())
    return S, R, S.members if use_exclude else ()


@settings(max_examples=300, deadline=None)
@given(search_instances())
def test_search_agrees_with_brute_force(inst):
    S, R, exclude = inst
    assert find_within_radius(S, R, exclude) == brute_within_radius(S, R, exclude)


def test_search_agrees_with_brute_force_medium():
    rng = random.Random(11)
    for _ in range(40):
        n, r = rng.choice([(2, 12), (3, 8), (4, 6)])
        S = random_set(rng, n, r, rng.randint(2, 10))
        R = rng.randint(r // 3, r)
        assert find_within_radius(S, R, S.members) == brute_within_radius(S, R, S.members)


def test_workers_do_not_change_the_witness():
    rng = random.Random(3)
    for _ in range(6):
        S = random_set(rng, 3, 7, 6)
        R = 4
        seq = search_within_radius(S, R, S.members, workers=1)
        par = search_within_radius(S, R, S.members, workers=3)
        assert seq == par


def test_verdict_examples():
    assert verdict_infinite(cube(2, 2), 2).maximal
    S_even = PointSet(2, 3, ((1, 1, 1), (2, 2, 1), (2, 1, 2), (1, 2, 2)))
    assert verdict_infinite(S_even, 2).status is Status.MAXIMAL
    v = verdict_infinite(PointSet(2, 2, ((1, 2), (2, 1))), 2)
    assert v.status is Status.EXTENDABLE
    assert v.witness == (1, 1) and v.witness_kind is WitnessKind.SAME_DIMENSION


def test_needs_new_coordinate():
    # an edge is already 1-maximal, a diagonal pair is not 2-maximal
    assert verdict_infinite(PointSet(2, 3, ((1, 1, 1), (1, 2, 1))), 1).maximal
    v = verdict_infinite(PointSet(2, 3, ((1, 1, 1), (2, 2, 1))), 2)
    assert v.witness == (1, 2, 1) and v.witness_kind is WitnessKind.SAME_DIMENSION
    # the radius-1 ball in [2]^3 is finite-maximal but its centre moves into a new coordinate
    U = PointSet(2, 3, ((1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)))
    assert verdict_finite(U, 2).maximal
    v = verdict_infinite(U, 2)
    assert v.witness == (1, 1, 1) and v.witness_kind is WitnessKind.NEEDS_NEW_COORDINATE
    ext = v.extension()
    assert ext == (1, 1, 1, 2) and all(distance(ext, b) <= 2 for b in U.members)


def test_diameter_mismatch():
    with pytest.raises(DiameterMismatch):
        verdict_infinite(cube(2, 2), 3)
    with pytest.raises(DiameterMismatch):
        verdict_finite(PointSet(2, 2, ()), 0)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_two_condition_verdict_matches_lifted_search(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    r = rng.randint(1, 5 if n == 2 else 3)
    S = random_set(rng, n, r, rng.randint(1, 6))
    d = diameter(S)
    v = verdict_infinite(S, d)
    for extra in (1, 2):
        assert v.maximal != brute_extendable(S, d, extra)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 2))
def test_verdict_stable_under_padding(seed, extra):
    rng = random.Random(seed)
    S = random_set(rng, 2, rng.randint(1, 6), rng.randint(1, 5))
    d = diameter(S)
    assert verdict_infinite(S, d).maximal == verdict_infinite(S.lift(S.r + extra), d).maximal


def test_complete_examples():
    assert complete(PointSet(2, 2, ((1, 2), (2, 1))), 2, 4) == cube(2, 2)
    assert complete(cube(2, 2), 2, 4) == cube(2, 2)
    single = PointSet(2, 3, ((1, 1, 1),))
    assert complete(single, 0, 3) == single


def test_complete_budget_error_carries_partial():
    with pytest.raises(BudgetExceeded) as err:
        complete(PointSet(2, 1, ((1,),)), 2, 1)
    assert err.value.partial.r == 1
    assert set(err.value.partial.members) == {(1,), (2,)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_complete_properties(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    S = random_set(rng, 2, rng.randint(1, 3), 1)
    S = S.union([w for w in random_set(rng, 2, S.r, 3).members
                 if all(distance(w, b) <= d for b in S.members)][:1])
    if diameter(S) > d:
        return
    budget = 3 * d + 2
    try:
        T = complete(S, d, budget)
    except BudgetExceeded:
        return
    assert set(S.lift(T.r).members) <= set(T.members)
    assert diameter(T) == d
    assert verdict_infinite(T, d).maximal
    assert complete(T, d, budget) == T


def test_grid_sets_are_maximal_and_complete_is_identity():
    for S, d in [(cube(2, 3), 3), (binary_maximal(3), 3), (hadamard_set(2), 2)]:
        assert verdict_infinite(S, d).maximal
        assert complete(S, d, S.r + 2) == S
