"""Maximality tests, extension witnesses and greedy completion.

The core primitive is a closest-string style search: the lexicographically
first word within radius R of every member of S.  It is a depth-first
branch-and-bound over coordinates with two prunes: a member whose partial
distance already exceeds R, and a pair of members b, b' for which the fixed
mismatches plus the undecided positions where b and b' differ exceed 2R.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .words import PAD, PointSet, Word, diameter, distance


class DiameterMismatch(ValueError):
    """The declared diameter does not match the set."""


class BudgetExceeded(RuntimeError):
    """Completion needed a new coordinate beyond the dimension budget."""

    def __init__(self, message: str, partial: PointSet):
        super().__init__(message)
        self.partial = partial


class Status(enum.Enum):
    MAXIMAL = "Maximal"
    EXTENDABLE = "Extendable"


class WitnessKind(enum.Enum):
    SAME_DIMENSION = "SameDimension"
    NEEDS_NEW_COORDINATE = "NeedsNewCoordinate"


@dataclass(frozen=True)
class MaximalityVerdict:
    status: Status
    witness: Optional[Word] = None
    witness_kind: Optional[WitnessKind] = None
    nodes_explored: int = 0

    @property
    def maximal(self) -> bool:
        return self.status is Status.MAXIMAL

    def extension(self) -> Optional[Word]:
        """The word that actually joins S: the witness itself, or the witness with a
        new coordinate set to 2 when it needs one."""
        if self.witness is None:
            return None
        if self.witness_kind is WitnessKind.NEEDS_NEW_COORDINATE:
            return self.witness + (PAD + 1,)
        return self.witness


class _Search:
    def __init__(self, S: PointSet, R: int, exclude: frozenset):
        self.n, self.r, self.R = S.n, S.r, R
        self.exclude = exclude
        M = S.as_array().astype(np.int64)
        self.M = M
        m = len(M)
        # suffix[i][j, j'] = positions >= i where members j, j' differ
        diff = (M[:, None, :] != M[None, :, :]).astype(np.int64) if m else np.zeros((0, 0, self.r), np.int64)
        suffix = np.zeros((self.r + 1, m, m), dtype=np.int64)
        for i in range(self.r - 1, -1, -1):
            suffix[i] = suffix[i + 1] + diff[:, :, i]
        self.suffix = suffix
        self.nodes = 0

    def feasible(self, dv: np.ndarray, i: int) -> bool:
        if len(dv) == 0:
            return True
        if dv.max() > self.R:
            return False
        if len(dv) > 1 and (dv[:, None] + dv[None, :] + self.suffix[i]).max() > 2 * self.R:
            return False
        return True

    def run(self, prefix: tuple = ()) -> Optional[Word]:
        if self.R < 0:
            return None
        dv = np.zeros(len(self.M), dtype=np.int64)
        for i, s in enumerate(prefix):
            dv = dv + (self.M[:, i] != s)
        if not self.feasible(dv, len(prefix)):
            return None
        return self._dfs(list(prefix), dv)

    def _dfs(self, word: list, dv: np.ndarray) -> Optional[Word]:
        self.nodes += 1
        i = len(word)
        if i == self.r:
            w = tuple(word)
            return None if w in self.exclude else w
        col = self.M[:, i] if len(self.M) else None
        for s in range(1, self.n + 1):
            nd = dv + (col != s) if col is not None else dv
            if not self.feasible(nd, i + 1):
                continue
            word.append(s)
            found = self._dfs(word, nd)
            word.pop()
            if found is not None:
                return found
        return None


def _branch(args):
    S, R, exclude, s = args
    search = _Search(S, R, exclude)
    return search.run((s,)), search.nodes


def search_within_radius(S: PointSet, R: int, exclude=None, workers: int = 1) -> tuple[Optional[Word], int]:
    """Like find_within_radius, also returning the number of search nodes visited."""
    exclude = frozenset(tuple(w) for w in exclude) if exclude is not None else frozenset()
    if R < 0:
        return None, 0
    if workers > 1 and S.r > 0:
        root = _Search(S, R, exclude)
        if not root.feasible(np.zeros(len(root.M), dtype=np.int64), 0):
            return None, 0
        # one task per first symbol; the smallest successful symbol wins, and
        # the node count is what the sequential search would have reported
        jobs = [(S, R, exclude, s) for s in range(1, S.n + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch, jobs))
        nodes = 1
        for found, n in results:
            nodes += n
            if found is not None:
                return found, nodes
        return None, nodes
    search = _Search(S, R, exclude)
    found = search.run()
    return found, search.nodes


def find_within_radius(S: PointSet, R: int, exclude=None, workers: int = 1) -> Optional[Word]:
    """Lexicographically smallest c in [n]^r minus ``exclude`` with max_b dist(c, b) <= R."""
    found, _ = search_within_radius(S, R, exclude, workers)
    if found is not None and any(distance(found, b) > R for b in S.members):
        raise AssertionError(f"search returned {found}, which is not within radius {R}")
    return found


def _verdict(S: PointSet, d: int, workers: int = 1) -> MaximalityVerdict:
    c, nodes = search_within_radius(S, d, S.members, workers)
    if c is not None:
        return MaximalityVerdict(Status.EXTENDABLE, c, WitnessKind.SAME_DIMENSION, nodes)
    c, more = search_within_radius(S, d - 1, None, workers)
    nodes += more
    if c is not None:
        return MaximalityVerdict(Status.EXTENDABLE, c, WitnessKind.NEEDS_NEW_COORDINATE, nodes)
    return MaximalityVerdict(Status.MAXIMAL, nodes_explored=nodes)


def _check_diameter(S: PointSet, d: int):
    if len(S) == 0:
        raise DiameterMismatch("empty set has no diameter")
    actual = diameter(S)
    if actual != d:
        raise DiameterMismatch(f"set has diameter {actual}, not {d}")


def verdict_infinite(S: PointSet, d: int, workers: int = 1) -> MaximalityVerdict:
    """d-maximality of S viewed inside [n]^infinity.

    A new point either agrees with the pad outside the first r coordinates,
    and is then a non-member of [n]^r within distance d of S, or it differs
    from the pad somewhere, and then its first r coordinates are within d-1
    of every member.  The first case is reported as SameDimension, the
    second as NeedsNewCoordinate.
    """
    _check_diameter(S, d)
    return _verdict(S, d, workers)


def verdict_finite(S: PointSet, d: int, workers: int = 1) -> MaximalityVerdict:
    """d-maximality of S inside [n]^r only."""
    _check_diameter(S, d)
    c, nodes = search_within_radius(S, d, S.members, workers)
    if c is not None:
        return MaximalityVerdict(Status.EXTENDABLE, c, WitnessKind.SAME_DIMENSION, nodes)
    return MaximalityVerdict(Status.MAXIMAL, nodes_explored=nodes)


def complete(S: PointSet, d: int, r_budget: int, workers: int = 1) -> PointSet:
    """Grow S to a set that is d-maximal in [n]^infinity, always adding the
    lexicographically smallest witness.  A witness that needs a new coordinate
    is placed in the next unused coordinate with symbol 2."""
    if len(S) and diameter(S) > d:
        raise DiameterMismatch(f"set has diameter {diameter(S)} > {d}")
    if S.r > r_budget:
        raise BudgetExceeded(f"dimension {S.r} already exceeds budget {r_budget}", S)
    while True:
        v = _verdict(S, d, workers)
        if v.maximal:
            return S
        if v.witness_kind is WitnessKind.SAME_DIMENSION:
            S = S.union([v.witness])
            continue
        if S.r + 1 > r_budget:
            raise BudgetExceeded(f"witness {v.witness} needs coordinate {S.r + 1} > budget {r_budget}", S)
        S = S.lift(S.r + 1).union([v.extension()])
