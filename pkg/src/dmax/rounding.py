"""Fractional centers, floating colouring and randomized rounding.

The average of the permissible matrices M(a), a in S, is a fractional point
close to every member.  Floating colouring walks along null-space lines of
the row-sum and distance constraints, freezing entries at 0 or 1, until at
most f + m entries float (f = rows still floating, m = |S|).  Sampling each
row independently then gives a random word whose distances to the members
concentrate around the fractional ones.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .words import PointSet, distance


class ConstraintDrift(AssertionError):
    """Exact constraint values changed during floating colouring."""


@dataclass(frozen=True)
class FractionalMatrix:
    entries: tuple  # r rows of n Fractions
    floating: tuple  # r rows of n bools

    def __post_init__(self):
        entries = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "floating", tuple(tuple(bool(x) for x in row) for row in self.floating))
        for i, row in enumerate(entries):
            if sum(row) != 1:
                raise ValueError(f"row {i} sums to {sum(row)}, not 1")
            for j, x in enumerate(row):
                if not 0 <= x <= 1:
                    raise ValueError(f"entry ({i}, {j}) = {x} is outside [0, 1]")
                if not self.floating[i][j] and x not in (0, 1):
                    raise ValueError(f"frozen entry ({i}, {j}) = {x} is not 0 or 1")
            nf = sum(self.floating[i])
            if nf == 1:
                raise ValueError(f"row {i} has a single floating entry")

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_values(cls, entries) -> "FractionalMatrix":
        entries = [[Fraction(x) for x in row] for row in entries]
        return cls(tuple(map(tuple, entries)), tuple(tuple(0 < x < 1 for x in row) for row in entries))

    @classmethod
    def permissible(cls, a: Sequence[int], n: int) -> "FractionalMatrix":
        return cls.from_values([[1 if j + 1 == s else 0 for j in range(n)] for s in a])

    def floating_count(self) -> int:
        return sum(map(sum, self.floating))

    def floating_rows(self) -> int:
        return sum(1 for row in self.floating if any(row))

    def l1_distance(self, b: Sequence[int]) -> Fraction:
        """||A - M(b)||_1 for entries in [0, 1]; linear in the entries."""
        total = Fraction(0)
        for row, s in zip(self.entries, b):
            for j, x in enumerate(row):
                total += (1 - x) if j + 1 == s else x
        return total

    def expected_distance(self, b: Sequence[int]) -> Fraction:
        """E dist(c, b) when c is sampled row by row from this matrix."""
        return sum((1 - row[s - 1] for row, s in zip(self.entries, b)), Fraction(0))


def fractional_center(S: PointSet) -> FractionalMatrix:
    if len(S) == 0:
        raise ValueError("fractional center of an empty set")
    m = len(S)
    counts = [[0] * S.n for _ in range(S.r)]
    for a in S.members:
        for i, s in enumerate(a):
            counts[i][s - 1] += 1
    return FractionalMatrix.from_values([[Fraction(c, m) for c in row] for row in counts])


def _constraint_values(A: FractionalMatrix, S: PointSet) -> tuple:
    return tuple(sum(row) for row in A.entries) + tuple(A.l1_distance(b) for b in S.members)


def _null_vector(rows: list[list[Fraction]], nvars: int) -> Optional[list[Fraction]]:
    """A nonzero solution of rows @ x = 0 by exact Gauss-Jordan elimination;
    the first free column gets value 1, other free columns 0."""
    M = [list(r) for r in rows]
    pivots = []
    pr = 0
    for col in range(nvars):
        sel = next((i for i in range(pr, len(M)) if M[i][col] != 0), None)
        if sel is None:
            continue
        M[pr], M[sel] = M[sel], M[pr]
        piv = M[pr][col]
        M[pr] = [x / piv for x in M[pr]]
        for i in range(len(M)):
            if i != pr and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[pr])]
        pivots.append(col)
        pr += 1
        if pr == len(M):
            break
    free = [c for c in range(nvars) if c not in set(pivots)]
    if not free:
        return None
    x = [Fraction(0)] * nvars
    x[free[0]] = Fraction(1)
    for i, col in enumerate(pivots):
        x[col] = -M[i][free[0]]
    return x


@dataclass
class RoundingStep:
    floating_before: int
    frozen: list
    step: Fraction


def floating_round(A: FractionalMatrix, S: PointSet, trace: Optional[list] = None) -> FractionalMatrix:
    """Move A along null-space lines of its active constraints until at most
    f + m entries float.  Row sums and the m linearized distances to the
    members of S are preserved exactly."""
    if A.r != S.r or A.n != S.n:
        raise ValueError("matrix shape does not match the point set")
    target = _constraint_values(A, S)
    vals = [list(row) for row in A.entries]
    flo = [list(row) for row in A.floating]
    m = len(S)
    for _ in range(A.r * A.n + 1):
        F = [(i, j) for i in range(A.r) for j in range(A.n) if flo[i][j]]
        active = [i for i in range(A.r) if any(flo[i])]
        if len(F) <= len(active) + m:
            break
        rows = []
        for i in active:
            rows.append([Fraction(1) if fi == i else Fraction(0) for fi, _ in F])
        for b in S.members:
            rows.append([Fraction(-1) if b[i] == j + 1 else Fraction(1) for i, j in F])
        x = _null_vector(rows, len(F))
        if x is None:
            raise ConstraintDrift("no null-space direction although variables exceed constraints")
        step = min(((1 - vals[i][j]) / xv if xv > 0 else vals[i][j] / -xv)
                   for (i, j), xv in zip(F, x) if xv != 0)
        frozen = []
        for (i, j), xv in zip(F, x):
            vals[i][j] += step * xv
            if vals[i][j] in (0, 1):
                flo[i][j] = False
                frozen.append((i, j))
        if not frozen:
            raise ConstraintDrift("line step froze no entry")
        if trace is not None:
            trace.append(RoundingStep(len(F), frozen, step))
    else:
        raise ConstraintDrift("floating colouring did not terminate within r*n steps")
    out = FractionalMatrix(tuple(map(tuple, vals)), tuple(map(tuple, flo)))
    if _constraint_values(out, S) != target:
        raise ConstraintDrift("constraint values changed during floating colouring")
    return out


def _rng(seed) -> random.Random:
    if isinstance(seed, tuple):
        state = np.random.SeedSequence(list(seed)).generate_state(2, dtype=np.uint64)
        seed = (int(state[0]) << 64) | int(state[1])
    return random.Random(seed)


def sample_center(A: FractionalMatrix, seed) -> tuple:
    """Draw c with c_i = j with probability A[i][j], independently per row.

    Probabilities are exact: each row is sampled by drawing an integer below
    the common denominator of its entries.
    """
    rng = _rng(seed)
    word = []
    for row in A.entries:
        if 1 in row:
            word.append(row.index(1) + 1)
            continue
        D = math.lcm(*(x.denominator for x in row))
        u = rng.randrange(D)
        acc = 0
        for j, x in enumerate(row):
            acc += x.numerator * (D // x.denominator)
            if u < acc:
                word.append(j + 1)
                break
    return tuple(word)


@dataclass(frozen=True)
class RoundingConfig:
    lam: Optional[float] = None
    retries: Optional[int] = None
    seed: int = 0
    target_radius: Optional[int] = None

    def __post_init__(self):
        if self.retries is not None and self.retries < 1:
            raise ValueError("retries must be at least 1")

    def resolved_lambda(self, m: int) -> float:
        return self.lam if self.lam is not None else math.sqrt(2 * math.log(m))

    def resolved_retries(self, m: int) -> int:
        if self.retries is not None:
            return self.retries
        lam = self.resolved_lambda(m)
        return max(64, min(10**5, math.ceil(m * math.exp(lam * lam / 2))))


def azuma_radius(m: int, d: int, lam: float) -> float:
    """Distance level exceeded for some member with probability < m exp(-lam^2 / 2)."""
    return (m - 1) / m * d + lam * math.sqrt(m)


def rounding_guarantee_applies(m: int, d: int) -> bool:
    return d / m - math.sqrt(2 * m * math.log(m)) >= 1 if m > 1 else d >= 1


@dataclass
class NearCenterRun:
    center: Optional[tuple]
    fractional: FractionalMatrix
    rounded: FractionalMatrix
    attempts: int
    target_radius: int


def near_center_run(S: PointSet, d: int, config: RoundingConfig = RoundingConfig()) -> NearCenterRun:
    target = d - 1 if config.target_radius is None else config.target_radius
    A0 = fractional_center(S)
    A1 = floating_round(A0, S)
    if target < 0:
        return NearCenterRun(None, A0, A1, 0, target)
    retries = config.resolved_retries(len(S))
    for t in range(retries):
        c = sample_center(A1, (config.seed, t))
        if max(distance(c, b) for b in S.members) <= target:
            return NearCenterRun(c, A0, A1, t + 1, target)
    return NearCenterRun(None, A0, A1, retries, target)


def find_near_center(S: PointSet, d: int, config: RoundingConfig = RoundingConfig()) -> Optional[tuple]:
    """First sampled word within config.target_radius (default d - 1) of every member, or None."""
    return near_center_run(S, d, config).center
