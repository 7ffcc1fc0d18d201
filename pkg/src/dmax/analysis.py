"""Far points, template refinement, sunflowers, shell statistics, bound formulas
and a brute-force check of Kleitman's theorem."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .cliques import mask_to_list, max_clique
from .words import (WILDCARD, PointSet, all_words, ball_size, distance, filter_by_template,
                    fits, is_regular, shell, template_weight)


class GuaranteeViolation(AssertionError):
    """A bound that holds for d-maximal inputs failed; the input was not what it claimed."""


def far_point(S: PointSet, y: Sequence[int], d: int, L: int = 0) -> tuple:
    """Member of S farthest from y (lexicographically first among ties).

    For a finite d-maximal set without (L+1)-balls the distance is at least
    d - L; anything less raises GuaranteeViolation.
    """
    if len(S) == 0:
        raise ValueError("far_point of an empty set")
    y = S.check_word(y)
    best = max(S.members, key=lambda a: (distance(a, y), [-s for s in a]))
    if distance(best, y) < d - L:
        raise GuaranteeViolation(f"farthest member {best} is at distance {distance(best, y)} < d - L = {d - L}")
    return best


@dataclass
class RefinementTrace:
    y: tuple
    r_far: tuple
    alpha: tuple
    beta: tuple
    gamma_counts: dict
    delta_counts: dict
    chosen: tuple  # (coordinate, symbol), 0-based coordinate
    ratio: Fraction  # achieved |S'[t']| / |S'|
    guaranteed: Fraction  # (1/n)(k - m - L)/(d - m/2 - L/2)


def refine_template(Sprime: PointSet, S: PointSet, w: Sequence[int], t: Sequence, k: int,
                    L: int, d: int) -> tuple[tuple, RefinementTrace]:
    """One step of the weight-increasing chain of regular templates.

    Fixes one more coordinate of ``t`` (one where a far point of S disagrees
    with the template completion) to the most popular non-w symbol among
    ``Sprime``, and checks that the surviving fraction meets the guarantee
    (1/n)(k - m - L)/(d - m/2 - L/2).
    """
    w = S.check_word(w)
    t = tuple(t)
    m = template_weight(t)
    n = S.n
    if len(Sprime) == 0:
        raise ValueError("empty Sprime")
    if len(t) != S.r or not is_regular(t, w):
        raise ValueError("template must have length r and be regular with respect to w")
    if not (m <= k <= d) or 2 * L > d:
        raise ValueError(f"need m <= k <= d and L <= d/2 (m={m}, k={k}, d={d}, L={L})")
    if k - m - L <= 0:
        raise ValueError(f"k - m - L = {k - m - L} leaves nothing to guarantee")
    for z in Sprime.members:
        if distance(z, w) != k or not fits(z, t):
            raise ValueError(f"{z} is not in the k-shell of w fitting the template")

    y = tuple(w[i] if x is WILDCARD else x for i, x in enumerate(t))
    r_far = far_point(S, y, d, L)
    alpha = tuple(i for i in range(S.r) if r_far[i] != y[i] and t[i] is not WILDCARD)
    beta = tuple(i for i in range(S.r) if r_far[i] != y[i] and t[i] is WILDCARD)
    if len(alpha) + len(beta) < d - L:
        raise GuaranteeViolation("|alpha| + |beta| < d - L")
    if (m - len(alpha)) + len(beta) > d:
        raise GuaranteeViolation("(m - |alpha|) + |beta| > d")
    gamma_counts = {z: sum(1 for i in beta if z[i] == r_far[i]) for z in Sprime.members}
    delta_counts = {z: sum(1 for i in beta if z[i] not in (r_far[i], w[i])) for z in Sprime.members}
    for z in Sprime.members:
        if 2 * gamma_counts[z] + delta_counts[z] < k - m + len(alpha) + len(beta) - d:
            raise GuaranteeViolation(f"2|gamma| + |delta| too small for {z}")
    if not beta:
        raise GuaranteeViolation("no free coordinate where the far point disagrees")

    size = len(Sprime)
    best = None
    for i in beta:
        for s in range(1, n + 1):
            if s == w[i]:
                continue
            count = sum(1 for z in Sprime.members if z[i] == s)
            if best is None or count > best[0]:
                best = (count, i, s)
    count, i, s = best
    guaranteed = Fraction(k - m - L, n) / (d - Fraction(m, 2) - Fraction(L, 2))
    ratio = Fraction(count, size)
    if ratio < guaranteed:
        raise GuaranteeViolation(f"refined fraction {ratio} < guarantee {guaranteed}")
    new_t = t[:i] + (s,) + t[i + 1:]
    return new_t, RefinementTrace(y, r_far, alpha, beta, gamma_counts, delta_counts, (i, s), ratio, guaranteed)


def refinement_chain(S: PointSet, w: Sequence[int], k: int, L: int, d: int) -> list:
    """Run refine_template from the all-wildcard template on the k-shell while k - m - L > 0.

    Returns a list of (template, trace, |S_k[template]|) per step.
    """
    w = S.check_word(w)
    t = (WILDCARD,) * S.r
    steps = []
    current = shell(S, w, k)
    m = 0
    while k - m - L > 0 and len(current):
        t, trace = refine_template(current, S, w, t, k, L, d)
        current = filter_by_template(current, t)
        m += 1
        steps.append((t, trace, len(current)))
    return steps


# -- sunflowers -------------------------------------------------------------------

def find_sunflower(family: Sequence, p: int) -> Optional[tuple]:
    """Constructive Erdos-Rado search for p sets with a common pairwise intersection.

    Returns (indices into family, core) or None.  A maximal disjoint
    subfamily of size >= p is a sunflower with empty core; otherwise every
    set meets its union, and the search recurses on the sets through one
    element of that union at a time, most frequent first.
    """
    sets = [frozenset(s) for s in family]
    if len(set(sets)) != len(sets):
        raise ValueError("family contains repeated sets")
    if p < 1:
        raise ValueError("p must be positive")
    return _sunflower(list(enumerate(sets)), p)


def _sunflower(items: list, p: int) -> Optional[tuple]:
    if len(items) < p:
        return None
    if p == 1:
        idx, s = items[0]
        return (idx,), s
    disjoint = []
    union: set = set()
    for idx, s in items:
        if not (s & union):
            disjoint.append(idx)
            union |= s
            if len(disjoint) == p:
                return tuple(disjoint), frozenset()
    counts = {}
    for _, s in items:
        for x in s & union:
            counts[x] = counts.get(x, 0) + 1
    for x in sorted(counts, key=lambda x: (-counts[x], repr(x))):
        if counts[x] < p:
            break
        sub = [(idx, s - {x}) for idx, s in items if x in s]
        found = _sunflower(sub, p)
        if found is not None:
            return found[0], found[1] | {x}
    return None


def is_set_sunflower(sets: Sequence) -> bool:
    sets = [frozenset(s) for s in sets]
    if len(sets) < 2:
        return True
    core = sets[0] & sets[1]
    return all(a & b == core for i, a in enumerate(sets) for b in sets[i + 1:])


def is_word_sunflower(words: Sequence, w: Sequence[int]) -> bool:
    """At every position the words all agree, or exactly one differs from w."""
    for i in range(len(w)):
        col = [a[i] for a in words]
        if len(set(col)) == 1:
            continue
        if sum(1 for x in col if x != w[i]) != 1:
            return False
    return True


def word_stem(words: Sequence, w: Sequence[int]) -> tuple:
    return tuple(i for i in range(len(w)) if len({a[i] for a in words}) == 1 and words[0][i] != w[i])


def sunflower_encoding(a: Sequence[int], w: Sequence[int], n: int) -> frozenset:
    """C(a) = C1(a) + C2(a) after relabelling each coordinate so that w_i becomes n."""
    out = set()
    for i, (s, wi) in enumerate(zip(a, w)):
        if s == wi:
            continue
        sym = wi if s == n else s  # swap w_i <-> n
        out.add(("C1", i))
        out.add(("C2", i, sym))
    return frozenset(out)


def find_word_sunflower(X: PointSet, w: Sequence[int], p: int) -> Optional[tuple]:
    """A p-sunflower with respect to w among members of X, as (members, stem)."""
    w = X.check_word(w)
    if len(X) == 0:
        return None
    ks = {distance(a, w) for a in X.members}
    if len(ks) != 1:
        raise ValueError("members of X must all be at the same distance from w")
    k = ks.pop()
    if p != 1 and p < X.n:
        raise ValueError(f"need p >= n (p={p}, n={X.n})")
    codes = [sunflower_encoding(a, w, X.n) for a in X.members]
    for c in codes:
        if len(c) != 2 * k:
            raise AssertionError(f"encoding has {len(c)} elements, expected {2 * k}")
    found = find_sunflower(codes, p)
    if found is None:
        return None
    members = tuple(X.members[i] for i in found[0])
    if not is_word_sunflower(members, w):
        raise AssertionError("set sunflower did not decode to a word sunflower")
    return members, word_stem(members, w)


# -- shell statistics -------------------------------------------------------------

@dataclass
class ShellProfile:
    k: int
    p: tuple  # p_i = Pr[a_i != w_i]
    per_symbol: tuple  # per_symbol[i][s-1] = Pr[a_i = s]
    size: int

    @property
    def total(self) -> Fraction:
        return sum(self.p, Fraction(0))

    @property
    def square_total(self) -> Fraction:
        return sum((x * x for x in self.p), Fraction(0))


def shell_profile(S: PointSet, w: Sequence[int], k: int, d: Optional[int] = None) -> ShellProfile:
    w = S.check_word(w)
    Sk = shell(S, w, k)
    if len(Sk) == 0:
        raise ValueError(f"shell {k} around {w} is empty")
    size = len(Sk)
    per_symbol = tuple(tuple(Fraction(sum(1 for a in Sk if a[i] == s), size) for s in range(1, S.n + 1))
                       for i in range(S.r))
    p = tuple(1 - per_symbol[i][w[i] - 1] for i in range(S.r))
    prof = ShellProfile(k, p, per_symbol, size)
    if prof.total != k:
        raise GuaranteeViolation(f"sum of p_i is {prof.total}, expected {k}")
    if d is not None and prof.square_total < k - Fraction(d, 2):
        raise GuaranteeViolation(f"sum of p_i^2 = {prof.square_total} < k - d/2")
    return prof


@dataclass
class BinaryProfile:
    ell: int
    delta: Fraction
    p_big: Fraction
    p_small: Fraction
    p_sorted: tuple


def binary_profile(S: PointSet, w: Sequence[int], k: int, ell: int) -> BinaryProfile:
    """Delta = sum over the ell largest p_i of (p_i - 1/2); P_big/P_small split the p mass at ell."""
    if S.n != 2:
        raise ValueError("binary_profile needs n = 2")
    prof = shell_profile(S, w, k)
    p = sorted(prof.p, reverse=True)
    head = p[:ell] + [Fraction(0)] * max(0, ell - len(p))
    delta = sum((x - Fraction(1, 2) for x in head), Fraction(0))
    p_big = sum(p[:ell], Fraction(0))
    p_small = sum(p[ell:], Fraction(0))
    if p_big + p_small != k:
        raise GuaranteeViolation("P_big + P_small != k")
    return BinaryProfile(ell, delta, p_big, p_small, tuple(p))


def shell_bound(n: int, d: int, k: int) -> Fraction:
    return Fraction(n, 2) ** k * comb(2 * d, k)


# -- bound formulas -----------------------------------------------------------------

def _sig(x: float) -> float:
    return float(f"{x:.15g}")


def binary_entropy(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def sun_estimate(p: int, k: int, C: float = 5.0) -> float:
    """(C p ln k)^k, with Sun(p, 0) = 1 and Sun(p, 1) = p - 1 exactly."""
    if k == 0:
        return 1.0
    if k == 1:
        return float(p - 1)
    return _sig((C * p * math.log(k)) ** k)


def lower_bound(d: int, base: float = 2.0) -> float:
    """1/2 (d / log(2d))^(2/3); log base 2 unless told otherwise."""
    return _sig(0.5 * (d / math.log(2 * d, base)) ** (2 / 3))


def entropy_bound(dim: int, d: int) -> float:
    """2^(dim H(d / 2 dim) + 1), a size bound for diameter-d subsets of [2]^dim (d < dim)."""
    return _sig(2 ** (dim * binary_entropy(d / (2 * dim)) + 1))


@dataclass
class BoundTable:
    n: int
    d: int
    L: int
    sunflower_constant_C: float = 5.0
    entries: dict = field(default_factory=dict)


def bound_table(n: int, d: int, L: int = 0, C: float = 5.0) -> BoundTable:
    if n < 2 or d < 1 or L < 0 or 2 * L > d:
        raise ValueError("need n >= 2, d >= 1 and 0 <= L <= d/2")
    base = n + 8 * n ** (2 / 3)
    e = {
        "weak_bound": (2 * n) ** d,
        "main_bound": _sig(d ** 2 * base ** d),
        "ball_free_shape": _sig(d ** (2 * L + 2) * base ** d),
        "sunflower_Z": sun_estimate(d + n, 2 * L, C),
        "lower_bound_log2": lower_bound(d, 2.0),
        "lower_bound_ln": lower_bound(d, math.e),
        "binary_bound": _sig((4 - 1e-10) ** d),
        "entropy_bound_2d": entropy_bound(2 * d, d),
        "cube_size": n ** d,
    }
    for k in range(d + 1):
        e[f"shell_bound_k{k}"] = shell_bound(n, d, k)
    return BoundTable(n, d, L, C, e)


# -- Kleitman -----------------------------------------------------------------------

def kleitman_formula(n_dim: int, d: int) -> int:
    if d % 2 == 0:
        return ball_size(2, n_dim, d // 2)
    return 2 * ball_size(2, n_dim - 1, (d - 1) // 2)


def kleitman_oracle(n_dim: int, d: int, node_budget: int = 10**7) -> int:
    """Largest diameter-d subset of [2]^n_dim by exact maximum-clique search."""
    if n_dim > 5:
        raise ValueError("kleitman_oracle is limited to n_dim <= 5")
    if not 0 <= d < n_dim:
        raise ValueError("need 0 <= d < n_dim")
    words = list(all_words(2, n_dim))
    adj = []
    for u in words:
        mask = 0
        for j, v in enumerate(words):
            if u != v and distance(u, v) <= d:
                mask |= 1 << j
        adj.append(mask)
    best = mask_to_list(max_clique(adj, node_budget))
    size = len(best)
    if size != kleitman_formula(n_dim, d):
        raise GuaranteeViolation(f"max diameter-{d} set in [2]^{n_dim} has {size} points, formula says "
                                 f"{kleitman_formula(n_dim, d)}")
    return size
