import itertools
import math
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmax.analysis import (GuaranteeViolation, binary_profile, bound_table, far_point,
                           find_sunflower, find_word_sunflower, is_set_sunflower,
                           is_word_sunflower, kleitman_formula, kleitman_oracle, lower_bound,
                           refine_template, refinement_chain, shell_bound, shell_profile,
                           sun_estimate, sunflower_encoding)
from dmax.constructions import binary_maximal, cube, hadamard_set
from dmax.words import WILDCARD, PointSet, ball, distance, shell

F = Fraction
S_EVEN = PointSet(2, 3, ((1, 1, 1), (2, 2, 1), (2, 1, 2), (1, 2, 2)))


def test_far_point_examples():
    assert far_point(cube(2, 3), (1, 1, 1), 3) == (2, 2, 2)
    H = hadamard_set(2)
    y = H.members[1]
    assert distance(far_point(H, y, 2), y) >= 2
    assert far_point(cube(2, 2), (2, 2), 2) == (1, 1)


def test_far_point_violation():
    with pytest.raises(GuaranteeViolation):
        far_point(PointSet(2, 3, ((1, 1, 1), (1, 1, 2))), (1, 1, 1), 3)


def test_refine_cube_trace():
    S = cube(2, 3)
    w = (1, 1, 1)
    S2 = shell(S, w, 2)
    assert len(S2) == 3
    t, tr = refine_template(S2, S, w, (WILDCARD,) * 3, 2, 0, 3)
    assert tr.r_far == (2, 2, 2)
    assert tr.alpha == () and tr.beta == (0, 1, 2)
    assert tr.chosen == (0, 2) and t == (2, WILDCARD, WILDCARD)
    assert tr.guaranteed == F(1, 3) and tr.ratio == F(2, 3)
    assert all(tr.gamma_counts[z] == 2 for z in S2.members)


def test_refine_rejects_empty_range():
    S = cube(2, 3)
    w = (1, 1, 1)
    S1 = PointSet(2, 3, ((2, 1, 1),))
    with pytest.raises(ValueError):
        refine_template(S1, S, w, (2, WILDCARD, WILDCARD), 1, 0, 3)
    with pytest.raises(ValueError):
        refine_template(PointSet(2, 3, ()), S, w, (WILDCARD,) * 3, 1, 0, 3)


def test_refine_rejects_irregular_template():
    S = cube(2, 3)
    with pytest.raises(ValueError):
        refine_template(shell(S, (1, 1, 1), 2), S, (1, 1, 1), (1, WILDCARD, WILDCARD), 2, 0, 3)


@pytest.mark.parametrize("S,d", [(cube(2, 3), 3), (cube(3, 2), 2), (binary_maximal(4), 4),
                                 (hadamard_set(4), 4)], ids=["cube23", "cube32", "binary4", "had4"])
def test_chains_on_constructions(S, d):
    for w in S.members:
        for k in range(1, d + 1):
            if not len(shell(S, w, k)):
                continue
            steps = refinement_chain(S, w, k, 0, d)
            assert steps
            for t, tr, size in steps:
                assert tr.ratio >= tr.guaranteed
            t, _, size = steps[-1]
            assert sum(x is not WILDCARD for x in t) == k
            assert size <= 1


def test_sunflower_set_examples():
    fam = [{1, 2}, {1, 3}, {1, 4}, {2, 3}]
    idx, core = find_sunflower(fam, 3)
    assert is_set_sunflower([fam[i] for i in idx])
    assert core == frozenset({1})
    assert find_sunflower([{1}, {2}], 3) is None
    assert find_sunflower([{1, 2}], 1) == ((0,), frozenset({1, 2}))


def test_word_sunflower_examples():
    X = PointSet(2, 4, ((1, 2, 2, 2), (2, 1, 2, 2)))
    members, stem = find_word_sunflower(X, (2, 2, 2, 2), 2)
    assert set(members) == set(X.members) and stem == ()
    Y = PointSet(2, 4, ((2, 2, 1, 1), (2, 1, 2, 1), (2, 1, 1, 2)))
    members, stem = find_word_sunflower(Y, (1, 1, 1, 1), 3)
    assert stem == (0,)
    members, stem = find_word_sunflower(Y, (1, 1, 1, 1), 1)
    assert len(members) == 1 and stem == tuple(i for i in range(4) if members[0][i] != 1)


def test_encoding_size():
    w = (3, 1, 2, 3)
    a = (1, 1, 3, 2)
    code = sunflower_encoding(a, w, 3)
    assert len(code) == 2 * distance(a, w)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_word_sunflowers_pass_definition(seed):
    rng = random.Random(seed)
    n, r, k = rng.choice([(2, 8, 3), (3, 6, 2), (3, 7, 3)])
    w = tuple(rng.randint(1, n) for _ in range(r))
    X = set()
    for _ in range(40):
        pos = rng.sample(range(r), k)
        a = list(w)
        for i in pos:
            a[i] = rng.choice([s for s in range(1, n + 1) if s != w[i]])
        X.add(tuple(a))
    X = PointSet(n, r, tuple(X))
    p = max(n, 2)
    found = find_word_sunflower(X, w, p)
    if found is not None:
        members, stem = found
        assert len(members) == p and is_word_sunflower(members, w)
        assert all(members[0][i] != w[i] and len({a[i] for a in members}) == 1 for i in stem)


def test_word_sunflower_requires_equal_distances():
    with pytest.raises(ValueError):
        find_word_sunflower(PointSet(2, 3, ((1, 1, 2), (2, 2, 1))), (1, 1, 1), 2)


def test_shell_profile_examples():
    prof = shell_profile(cube(2, 2), (1, 1), 1, d=2)
    assert prof.p == (F(1, 2), F(1, 2)) and prof.total == 1 and prof.square_total == F(1, 2)
    assert shell_profile(cube(2, 2), (1, 1), 0).p == (0, 0)
    prof = shell_profile(S_EVEN, (1, 1, 1), 2, d=2)
    assert prof.p == (F(2, 3),) * 3 and prof.total == 2 and prof.square_total == F(4, 3)
    with pytest.raises(ValueError):
        shell_profile(S_EVEN, (1, 1, 1), 1)


def test_binary_profile_examples():
    bp = binary_profile(cube(2, 2), (1, 1), 1, 2)
    assert (bp.delta, bp.p_big, bp.p_small) == (0, 1, 0)
    bp = binary_profile(cube(2, 2), (1, 1), 0, 2)
    assert (bp.delta, bp.p_big, bp.p_small) == (-1, 0, 0)
    bp = binary_profile(S_EVEN, (1, 1, 1), 2, 3)
    assert bp.delta == F(1, 2) and bp.p_small == 0
    with pytest.raises(ValueError):
        binary_profile(cube(3, 2), (1, 1), 1, 2)


def test_shell_sizes_within_bound():
    for S, d in [(binary_maximal(4), 4), (hadamard_set(4), 4), (binary_maximal(6), 6)]:
        for w in S.members:
            for k in range(d + 1):
                assert len(shell(S, w, k)) <= shell_bound(S.n, d, k)


def test_bound_table_examples():
    tab = bound_table(2, 2).entries
    assert tab["weak_bound"] == 16 and tab["cube_size"] == 4
    assert abs(bound_table(2, 4).entries["lower_bound_log2"] - 0.5 * (4 / 3) ** (2 / 3)) < 1e-12
    assert round(lower_bound(4), 4) == 0.6057
    assert sun_estimate(7, 0) == 1
    assert tab["shell_bound_k2"] == math.comb(4, 2)
    assert all(v > 0 and math.isfinite(v) for v in bound_table(3, 5, 2).entries.values())
    with pytest.raises(ValueError):
        bound_table(2, 2, 2)


def _networkx_max(n_dim, d):
    words = list(itertools.product((1, 2), repeat=n_dim))
    G = nx.Graph()
    G.add_nodes_from(range(len(words)))
    G.add_edges_from((i, j) for i, j in itertools.combinations(range(len(words)), 2)
                     if distance(words[i], words[j]) <= d)
    clique, _ = nx.max_weight_clique(G, weight=None)
    return len(clique)


@pytest.mark.parametrize("n_dim,d", [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_kleitman_against_networkx(n_dim, d):
    assert kleitman_oracle(n_dim, d) == _networkx_max(n_dim, d) == kleitman_formula(n_dim, d)


def test_kleitman_examples():
    assert kleitman_oracle(4, 2) == 5
    assert kleitman_oracle(3, 1) == 2
    assert kleitman_oracle(5, 4) == 16 == len(ball((1,) * 5, 2, 2))
    with pytest.raises(ValueError):
        kleitman_oracle(6, 2)
