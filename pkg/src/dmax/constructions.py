"""Explicit d-maximal families: cubes, the binary middle-layer sets, Hadamard sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

from .words import PointSet, distance


class UnsupportedOrderError(ValueError):
    """No implemented kernel builds a Hadamard matrix of the requested order."""


@dataclass(frozen=True)
class ConstructionSpec:
    family: str  # cube | binary_even | binary_odd | hadamard
    n: int
    d: int
    order: Optional[int] = None

    def __post_init__(self):
        if self.family not in ("cube", "binary_even", "binary_odd", "hadamard"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family != "cube" and self.n != 2:
            raise ValueError(f"family {self.family} lives over the binary alphabet")
        if self.family == "binary_even" and self.d % 2:
            raise ValueError("binary_even needs an even diameter")
        if self.family == "binary_odd" and self.d % 2 == 0:
            raise ValueError("binary_odd needs an odd diameter")
        if self.family == "hadamard":
            order = 2 * self.d if self.order is None else self.order
            if order != 2 * self.d:
                raise ValueError("hadamard order must equal 2d")
            if order not in (1, 2) and order % 4:
                raise ValueError(f"no Hadamard matrix of order {order}")
            object.__setattr__(self, "order", order)

    def build(self) -> PointSet:
        if self.family == "cube":
            return cube(self.n, self.d)
        if self.family == "hadamard":
            return hadamard_set(self.d)
        return binary_maximal(self.d)


def cube(n: int, d: int) -> PointSet:
    """All of [n]^d; padded with 1s this is d-maximal with n^d elements."""
    if n < 2 or d < 1:
        raise ValueError("cube needs n >= 2 and d >= 1")
    return PointSet(n, d, tuple(itertools.product(range(1, n + 1), repeat=d)))


def _subset_word(A, r: int) -> tuple:
    return tuple(2 if i in A else 1 for i in range(r))


def binary_maximal(d: int) -> PointSet:
    """The empty set plus all 2k-subsets of [3k] (d = 2k), or its doubling on one extra
    coordinate (d = 2k + 1).  Element i present <=> symbol 2 at position i."""
    if d < 2:
        raise ValueError("binary_maximal needs d >= 2")
    k = d // 2
    even = [frozenset()] + [frozenset(c) for c in itertools.combinations(range(3 * k), 2 * k)]
    if d % 2 == 0:
        return PointSet(2, 3 * k, tuple(_subset_word(A, 3 * k) for A in even))
    r = 3 * k + 1
    words = [_subset_word(A, r) for A in even] + [_subset_word(A | {3 * k}, r) for A in even]
    return PointSet(2, r, tuple(words))


def binary_maximal_size(d: int) -> int:
    base = comb(3 * (d // 2), 2 * (d // 2)) + 1
    return base if d % 2 == 0 else 2 * base


# -- Hadamard matrices ---------------------------------------------------------

def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def sylvester(order: int) -> np.ndarray:
    if order < 1 or order & (order - 1):
        raise UnsupportedOrderError(f"Sylvester needs a power of two, got {order}")
    H = np.ones((1, 1), dtype=np.int64)
    while len(H) < order:
        H = np.block([[H, H], [H, -H]])
    return H


def paley1(q: int) -> np.ndarray:
    """Paley construction I of order q + 1 for a prime q = 3 mod 4."""
    if not _is_prime(q) or q % 4 != 3:
        raise UnsupportedOrderError(f"Paley I needs a prime q = 3 mod 4, got {q}")
    squares = {(x * x) % q for x in range(1, q)}
    chi = [0] + [1 if x in squares else -1 for x in range(1, q)]
    Q = np.array([[chi[(j - i) % q] for j in range(q)] for i in range(q)], dtype=np.int64)
    S = np.zeros((q + 1, q + 1), dtype=np.int64)
    S[0, 1:] = 1
    S[1:, 0] = -1
    S[1:, 1:] = Q
    return np.eye(q + 1, dtype=np.int64) + S


def hadamard_matrix(order: int) -> np.ndarray:
    """A normalized Hadamard matrix built from Sylvester and Paley I kernels by tensoring."""
    H = _hadamard(order)
    if H is None:
        raise UnsupportedOrderError(f"order {order} is not reachable by Sylvester/Paley I tensoring")
    H = H * H[0][None, :]
    H = H * H[:, 0][:, None]
    if not np.array_equal(H @ H.T, order * np.eye(order, dtype=np.int64)):
        raise AssertionError(f"constructed matrix of order {order} is not Hadamard")
    return H


def _hadamard(order: int) -> Optional[np.ndarray]:
    if order < 1:
        return None
    if order & (order - 1) == 0:
        return sylvester(order)
    if _is_prime(order - 1) and (order - 1) % 4 == 3:
        return paley1(order - 1)
    for f in range(4, order // 2 + 1):
        if order % f == 0 and _is_prime(f - 1) and (f - 1) % 4 == 3:
            rest = _hadamard(order // f)
            if rest is not None:
                return np.kron(paley1(f - 1), rest)
    return None


def hadamard_set(d: int) -> PointSet:
    """Rows of a normalized order-2d Hadamard matrix, +1 -> 1 and -1 -> 2."""
    if d < 1:
        raise ValueError("hadamard_set needs d >= 1")
    H = hadamard_matrix(2 * d)
    words = [tuple(1 if x > 0 else 2 for x in row) for row in H]
    return PointSet(2, 2 * d, tuple(words))


def check_lift_hypothesis(S: PointSet, d: int) -> tuple[bool, dict]:
    """Check that every (a, i) has a partner b with a_i = b_i and dist(a, b) = d.

    Returns the verdict and a map (a, i) -> b, with b = None where no partner
    exists.  When the hypothesis holds, S stays d-maximal over n + 1 letters.
    """
    witnesses = {}
    ok = True
    for a in S.members:
        far = [b for b in S.members if distance(a, b) == d]
        for i in range(S.r):
            b = next((b for b in far if b[i] == a[i]), None)
            witnesses[(a, i)] = b
            ok = ok and b is not None
    return ok, witnesses


def standard_grid() -> list[ConstructionSpec]:
    """Cubes over [2] and [3], the binary family for d = 2..6 and Hadamard sets for d = 2, 4, 6."""
    specs = [ConstructionSpec("cube", 2, d) for d in range(1, 5)]
    specs += [ConstructionSpec("cube", 3, d) for d in range(1, 4)]
    specs += [ConstructionSpec("binary_even" if d % 2 == 0 else "binary_odd", 2, d) for d in range(2, 7)]
    specs += [ConstructionSpec("hadamard", 2, d) for d in (2, 4, 6)]
    return specs
