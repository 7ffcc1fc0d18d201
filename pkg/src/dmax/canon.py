"""Canonical forms of point sets under coordinate permutations composed with
independent per-coordinate alphabet permutations.

A point set is viewed as a three-layer structure: rows (members), columns
(coordinates) and one symbol vertex per (column, symbol).  Colour refinement
runs on that structure, symbol vertices are individualized until every
column and every used symbol is distinguished, and the smallest sorted
member list over all leaves is the canonical form.  Automorphisms found
along the way (two leaves giving the same list) prune sibling branches.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .cliques import maximal_cliques
from .maximality import search_within_radius
from .words import PAD, PointSet, all_words, diameter, distance, distance_multiset


@dataclass(frozen=True)
class Isomorphism:
    """sigma(a)_i = symbol_permutations[i][a[coordinate_permutation[i]] - 1]."""

    coordinate_permutation: tuple
    symbol_permutations: tuple

    def __post_init__(self):
        r = len(self.coordinate_permutation)
        if sorted(self.coordinate_permutation) != list(range(r)):
            raise ValueError("coordinate_permutation is not a permutation")
        if len(self.symbol_permutations) != r:
            raise ValueError("need one symbol permutation per coordinate")
        for p in self.symbol_permutations:
            if sorted(p) != list(range(1, len(p) + 1)):
                raise ValueError(f"{p} is not a permutation of 1..{len(p)}")

    def image(self, a) -> tuple:
        return tuple(self.symbol_permutations[i][a[j] - 1] for i, j in enumerate(self.coordinate_permutation))

    def apply(self, S: PointSet) -> PointSet:
        if S.r != len(self.coordinate_permutation):
            raise ValueError("isomorphism dimension does not match the set")
        T = PointSet(S.n, S.r, tuple(self.image(a) for a in S.members))
        # isometry check on a sample of pairs
        for a, b in itertools.islice(itertools.combinations(S.members, 2), 200):
            if distance(self.image(a), self.image(b)) != distance(a, b):
                raise AssertionError("isomorphism failed to preserve a distance")
        return T

    @classmethod
    def identity(cls, n: int, r: int) -> "Isomorphism":
        return cls(tuple(range(r)), tuple(tuple(range(1, n + 1)) for _ in range(r)))

    @classmethod
    def random(cls, n: int, r: int, rng: random.Random) -> "Isomorphism":
        perm = list(range(r))
        rng.shuffle(perm)
        syms = []
        for _ in range(r):
            p = list(range(1, n + 1))
            rng.shuffle(p)
            syms.append(tuple(p))
        return cls(tuple(perm), tuple(syms))


def _relabel(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


class _Canonizer:
    def __init__(self, S: PointSet):
        self.n = n = S.n
        self.rows = rows = list(S.members)
        self.m = m = len(rows)
        self.r = r = S.r
        self.col0 = m
        self.sym0 = m + r
        V = m + r + r * n
        adj = [[] for _ in range(V)]
        freq = [[0] * n for _ in range(r)]
        for j, a in enumerate(rows):
            for c, s in enumerate(a):
                sv = self.sym(c, s)
                adj[j].append(sv)
                adj[sv].append(j)
                freq[c][s - 1] += 1
        for c in range(r):
            for s in range(1, n + 1):
                adj[self.col0 + c].append(self.sym(c, s))
                adj[self.sym(c, s)].append(self.col0 + c)
        self.adj = adj
        self.used = [[freq[c][s - 1] > 0 for s in range(1, n + 1)] for c in range(r)]
        self.used_syms = [self.sym(c, s) for c in range(r) for s in range(1, n + 1) if self.used[c][s - 1]]
        keys = []
        for a in rows:
            keys.append((0, tuple(sorted(distance(a, b) for b in rows))))
        for c in range(r):
            keys.append((1, tuple(sorted(freq[c]))))
        for c in range(r):
            for s in range(n):
                keys.append((2, (freq[c][s],)))
        self.colors0 = self.refine(_relabel(keys))
        self.first = None
        self.best = None
        self.generators: list[list[int]] = []
        self.explored: list[list[int]] = []
        self.abort_to: Optional[int] = None
        self.leaves = 0

    def sym(self, c: int, s: int) -> int:
        return self.sym0 + c * self.n + (s - 1)

    def refine(self, colors: list[int]) -> list[int]:
        count = len(set(colors))
        adj = self.adj
        while True:
            keys = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(colors))]
            new = _relabel(keys)
            new_count = len(set(new))
            if new_count == count:
                return new
            colors, count = new, new_count

    def target_cell(self, colors: list[int]) -> Optional[list[int]]:
        cells: dict[int, list[int]] = {}
        for v in self.used_syms:
            cells.setdefault(colors[v], []).append(v)
        for col in sorted(cells):
            if len(cells[col]) > 1:
                return cells[col]
        cols: dict[int, list[int]] = {}
        for c in range(self.r):
            cols.setdefault(colors[self.col0 + c], []).append(self.col0 + c)
        for col in sorted(cols):
            if len(cols[col]) > 1:
                return cols[col]
        return None

    def labeling(self, colors: list[int]):
        """Column order and per-column symbol labels read off a discrete leaf colouring."""
        order = sorted(range(self.r), key=lambda c: colors[self.col0 + c])
        labels = []
        for c in range(self.r):
            used = [s for s in range(1, self.n + 1) if self.used[c][s - 1]]
            unused = [s for s in range(1, self.n + 1) if not self.used[c][s - 1]]
            used.sort(key=lambda s: colors[self.sym(c, s)])
            lab = [0] * self.n
            for i, s in enumerate(used + unused):
                lab[s - 1] = i + 1
            labels.append(lab)
        key = tuple(sorted(tuple(labels[c][a[c] - 1] for c in order) for a in self.rows))
        # vertex map into canonical index space: column -> position, (c, s) -> (position, label)
        pos = [0] * self.r
        for i, c in enumerate(order):
            pos[c] = i
        lam = [0] * (self.r + self.r * self.n)
        for c in range(self.r):
            lam[c] = pos[c]
            for s in range(1, self.n + 1):
                lam[self.r + c * self.n + s - 1] = self.r + pos[c] * self.n + labels[c][s - 1] - 1
        return key, order, labels, lam

    def _vertex(self, v: int) -> int:
        # graph vertex -> index in the column/symbol permutation space
        return v - self.col0

    def _orbit_roots(self, fixed: list[int]):
        fixed_idx = [self._vertex(v) for v in fixed]
        gens = [g for g in self.generators if all(g[x] == x for x in fixed_idx)]
        parent = list(range(self.r + self.r * self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for x, y in enumerate(g):
                a, b = find(x), find(y)
                if a != b:
                    parent[a] = b
        return find

    def _redundant(self, v: int, earlier: list[int], prefix: list[int]) -> bool:
        if not earlier or not self.generators:
            return False
        find = self._orbit_roots(prefix)
        rv = find(self._vertex(v))
        return any(find(self._vertex(e)) == rv for e in earlier)

    def leaf(self, colors: list[int], prefix: list[int]):
        self.leaves += 1
        key, order, labels, lam = self.labeling(colors)
        auto_with = None
        if self.first is None:
            self.first = (key, lam)
            self.best = (key, order, labels, lam)
            return
        if key == self.first[0]:
            auto_with = self.first[1]
        elif key == self.best[0]:
            auto_with = self.best[3]
        elif key < self.best[0]:
            self.best = (key, order, labels, lam)
        if auto_with is None:
            return
        inv = [0] * len(auto_with)
        for x, y in enumerate(auto_with):
            inv[y] = x
        gamma = [inv[lam[x]] for x in range(len(lam))]
        if gamma == list(range(len(gamma))):
            return
        self.generators.append(gamma)
        for depth in range(len(prefix)):
            siblings = self.explored[depth]
            if self._redundant(siblings[-1], siblings[:-1], prefix[:depth]):
                self.abort_to = depth
                return

    def search(self, colors: list[int], prefix: list[int]):
        cell = self.target_cell(colors)
        if cell is None:
            self.leaf(colors, prefix)
            return
        depth = len(prefix)
        self.explored.append([])
        try:
            for v in sorted(cell):
                if self._redundant(v, self.explored[depth], prefix):
                    continue
                self.explored[depth].append(v)
                indiv = [2 * c + 1 for c in colors]
                indiv[v] = 2 * colors[v]
                self.search(self.refine(_relabel(indiv)), prefix + [v])
                if self.abort_to is not None:
                    if self.abort_to < depth:
                        return
                    self.abort_to = None
        finally:
            self.explored.pop()

    def run(self):
        self.search(self.colors0, [])
        return self.best


def _support(S: PointSet) -> list[int]:
    return [c for c in range(S.r) if len({a[c] for a in S.members}) > 1]


def canonicalize(S: PointSet) -> tuple[PointSet, Isomorphism]:
    """Canonical representative and an isomorphism sigma with sigma(S) = form padded to S.r.

    Constant columns carry no information in [n]^infinity, so they are moved
    to the end and relabelled to the pad symbol; the returned form keeps only
    the non-constant columns.
    """
    n = S.n
    support = _support(S)
    constant = [c for c in range(S.r) if c not in support]
    reduced = PointSet(n, len(support), tuple(tuple(a[c] for c in support) for a in S.members))
    if len(reduced) == 0 or reduced.r == 0:
        order, labels, key = [], [], tuple(() for _ in reduced.members)
    else:
        key, order, labels, _ = _Canonizer(reduced).run()
    form = PointSet(n, reduced.r, key)

    coord_perm, sym_perms = [], []
    for c in order:
        coord_perm.append(support[c])
        sym_perms.append(tuple(labels[c]))
    for c in constant:
        coord_perm.append(c)
        s0 = S.members[0][c] if len(S) else PAD
        p = list(range(1, n + 1))
        p[s0 - 1], p[PAD - 1] = PAD, s0
        sym_perms.append(tuple(p))
    iso = Isomorphism(tuple(coord_perm), tuple(sym_perms))
    return form, iso


def canonical_form(S: PointSet) -> PointSet:
    return canonicalize(S)[0]


def are_isomorphic(S: PointSet, T: PointSet) -> bool:
    """Isomorphism in [n]^infinity (constant columns ignored)."""
    if S.n != T.n or len(S) != len(T):
        return False
    if distance_multiset(S) != distance_multiset(T):
        return False
    return canonical_form(S) == canonical_form(T)


class EnumerationBudgetExceeded(RuntimeError):
    pass


def enumerate_types(n: int, d: int, r_max: int, size_max: Optional[int] = None) -> list[PointSet]:
    """All finite d-maximal sets with support in r_max coordinates and at most
    size_max members, one canonical representative per isomorphism class.

    Every class has a member containing the all-pad word, so it suffices to
    run through maximal cliques of the "distance <= d" graph on [n]^r_max
    that contain that word.
    """
    if n ** r_max > 10**6:
        raise EnumerationBudgetExceeded(f"{n}^{r_max} exceeds the 10^6 word budget")
    origin = (PAD,) * r_max
    near = [w for w in all_words(n, r_max) if w != origin and distance(w, origin) <= d]
    adj = []
    for u in near:
        mask = 0
        for j, v in enumerate(near):
            if v != u and distance(u, v) <= d:
                mask |= 1 << j
        adj.append(mask)
    seen = {}
    for clique in maximal_cliques(adj) if near else iter([0]):
        words = [origin] + [near[j] for j in range(len(near)) if clique >> j & 1]
        if size_max is not None and len(words) > size_max:
            continue
        S = PointSet(n, r_max, tuple(words))
        if diameter(S) != d:
            continue
        if search_within_radius(S, d - 1)[0] is not None:
            continue
        form = canonical_form(S)
        seen.setdefault((form.r, form.members), form)
    return [seen[k] for k in sorted(seen)]
