"""Words over [n], Hamming distance, templates, shells and balls.

Words are plain tuples of ints in 1..n.  Symbol 1 is the pad: a word of
length r stands for the infinite word that continues with 1s, so words of
different lengths are compared after padding the shorter one.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

PAD = 1
WILDCARD = None

Word = tuple


def _padded(a: Sequence[int], b: Sequence[int]) -> tuple[Sequence[int], Sequence[int]]:
    if len(a) < len(b):
        a = tuple(a) + (PAD,) * (len(b) - len(a))
    elif len(b) < len(a):
        b = tuple(b) + (PAD,) * (len(a) - len(b))
    return a, b


def distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Hamming distance, padding the shorter word with symbol 1."""
    a, b = _padded(a, b)
    return sum(x != y for x, y in zip(a, b))


def pad_word(a: Sequence[int], r: int) -> Word:
    if len(a) > r:
        if any(s != PAD for s in a[r:]):
            raise ValueError(f"word {tuple(a)} has non-pad symbols beyond length {r}")
        return tuple(a[:r])
    return tuple(a) + (PAD,) * (r - len(a))


@dataclass(frozen=True)
class PointSet:
    """A finite set of words of length ``r`` over the alphabet 1..n.

    Members are stored sorted and de-duplicated, so two PointSets with the
    same (n, r, members) compare equal.
    """

    n: int
    r: int
    members: tuple = ()
    _index: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"alphabet size must be positive, got {self.n}")
        if self.r < 0:
            raise ValueError(f"dimension must be nonnegative, got {self.r}")
        words = []
        for w in self.members:
            w = tuple(int(s) for s in w)
            if len(w) != self.r:
                raise ValueError(f"word {w} has length {len(w)}, expected {self.r}")
            if any(s < 1 or s > self.n for s in w):
                raise ValueError(f"word {w} has symbols outside 1..{self.n}")
            words.append(w)
        uniq = sorted(set(words))
        object.__setattr__(self, "members", tuple(uniq))
        object.__setattr__(self, "_index", frozenset(uniq))

    @classmethod
    def of(cls, words: Iterable[Sequence[int]], n: int, r: Optional[int] = None) -> "PointSet":
        words = [tuple(w) for w in words]
        if r is None:
            r = max((len(w) for w in words), default=0)
        return cls(n, r, tuple(pad_word(w, r) for w in words))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.members)

    def __contains__(self, word) -> bool:
        return tuple(word) in self._index

    def check_word(self, word: Sequence[int]) -> Word:
        """Validate ``word`` against this set's alphabet and pad it to length r."""
        word = tuple(int(s) for s in word)
        if any(s < 1 or s > self.n for s in word):
            raise ValueError(f"word {word} uses symbols outside the alphabet 1..{self.n}")
        return pad_word(word, self.r)

    def lift(self, r: int) -> "PointSet":
        """Append pad coordinates (or drop trailing pad coordinates) to reach dimension r."""
        return PointSet(self.n, r, tuple(pad_word(w, r) for w in self.members))

    def with_alphabet(self, n: int) -> "PointSet":
        return PointSet(n, self.r, self.members)

    def union(self, words: Iterable[Sequence[int]]) -> "PointSet":
        return PointSet(self.n, self.r, self.members + tuple(tuple(w) for w in words))

    def as_array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int16).reshape(len(self.members), self.r)


def diameter(S: PointSet) -> int:
    """Maximum pairwise distance.  The empty set gets 0 and a warning."""
    if len(S) == 0:
        warnings.warn("diameter of an empty point set taken as 0", stacklevel=2)
        return 0
    if len(S) == 1:
        return 0
    A = S.as_array()
    best = 0
    for i in range(len(A) - 1):
        best = max(best, int((A[i + 1:] != A[i]).sum(axis=1).max()))
    return best


def distance_multiset(S: PointSet) -> tuple:
    A = S.as_array()
    out = []
    for i in range(len(A) - 1):
        out.extend((A[i + 1:] != A[i]).sum(axis=1).tolist())
    return tuple(sorted(out))


# -- templates ---------------------------------------------------------------

def template_weight(t: Sequence) -> int:
    return sum(x is not WILDCARD for x in t)


def is_regular(t: Sequence, w: Sequence[int]) -> bool:
    """Every fixed entry of ``t`` differs from ``w`` at that position."""
    return all(x is WILDCARD or x != wi for x, wi in zip(t, w))


def fits(a: Sequence[int], t: Sequence) -> bool:
    return all(x is WILDCARD or x == ai for x, ai in zip(t, a))


def filter_by_template(S: PointSet, t: Sequence) -> PointSet:
    if len(t) != S.r:
        raise ValueError(f"template length {len(t)} does not match dimension {S.r}")
    return PointSet(S.n, S.r, tuple(a for a in S.members if fits(a, t)))


def parse_template(text: str) -> tuple:
    """Parse '2,*,*' (or '2 * *') into a template tuple."""
    parts = text.replace(",", " ").split()
    return tuple(WILDCARD if p in ("*", "?") else int(p) for p in parts)


# -- balls and shells ----------------------------------------------------------

def ball_size(n: int, r: int, radius: int) -> int:
    return sum(comb(r, j) * (n - 1) ** j for j in range(min(radius, r) + 1))


def sphere(center: Sequence[int], radius: int, n: int) -> Iterator[Word]:
    """Words at distance exactly ``radius`` from ``center`` (lexicographic order not guaranteed)."""
    center = tuple(center)
    r = len(center)
    for pos in itertools.combinations(range(r), radius):
        choices = [[s for s in range(1, n + 1) if s != center[i]] for i in pos]
        for syms in itertools.product(*choices):
            w = list(center)
            for i, s in zip(pos, syms):
                w[i] = s
            yield tuple(w)


def ball(center: Sequence[int], radius: int, n: int, r: Optional[int] = None) -> PointSet:
    r = len(center) if r is None else r
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius > r:
        raise ValueError(f"radius {radius} exceeds dimension {r}")
    center = pad_word(center, r)
    words = [w for j in range(radius + 1) for w in sphere(center, j, n)]
    return PointSet(n, r, tuple(words))


def shell(S: PointSet, w: Sequence[int], k: int) -> PointSet:
    w = S.check_word(w)
    return PointSet(S.n, S.r, tuple(a for a in S.members if distance(a, w) == k))


def ball_radius_inside(S: PointSet, a: Sequence[int]) -> int:
    """Largest radius rho <= r with Ball(a, rho) contained in S, or -1 if a is not in S."""
    a = tuple(a)
    if a not in S:
        return -1
    rho = 0
    while rho < S.r and all(x in S for x in sphere(a, rho + 1, S.n)):
        rho += 1
    return rho


def contains_ball(S: PointSet, radius: int) -> bool:
    """Whether some ball of the given radius (inside ambient [n]^r) is a subset of S."""
    return any(ball_radius_inside(S, a) >= radius for a in S.members)


def ball_in_ball(a: Sequence[int], la: int, b: Sequence[int], lb: int, r: int) -> bool:
    """Exact test of Ball(a, la) <= Ball(b, lb) in [n]^r, n >= 2.

    The farthest point of Ball(a, la) from b sits at distance
    D + min(la, r - D) where D = dist(a, b).
    """
    D = distance(a, b)
    return D + min(la, r - D) <= lb


def core_centers(S: PointSet, ell: int) -> PointSet:
    """Centers of ell-balls inside S that no strictly larger (ell+1)-ball inside S absorbs.

    Balls live in the ambient [n]^r.  Once ell >= r every ball is the whole
    space, so absorption by a radius ell+1 ball is no longer strict and is
    not counted.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    rho = {a: ball_radius_inside(S, a) for a in S.members}
    big = [b for b in S.members if rho[b] >= ell + 1]
    out = []
    for a in S.members:
        if rho[a] < ell:
            continue
        if ell < S.r and any(ball_in_ball(a, ell, b, ell + 1, S.r) for b in big):
            continue
        out.append(a)
    return PointSet(S.n, S.r, tuple(out))


def ball_decomposition(S: PointSet) -> dict:
    """Map ell -> core_centers(S, ell) for every ell with a nonempty core."""
    out = {}
    for ell in range(S.r + 1):
        core = core_centers(S, ell)
        if len(core):
            out[ell] = core
    return out


def all_words(n: int, r: int) -> Iterator[Word]:
    return itertools.product(range(1, n + 1), repeat=r)
