"""Bitset clique routines for small graphs (vertices 0..N-1, adjacency as int masks)."""

from __future__ import annotations

from typing import Iterator


def popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def maximal_cliques(adj: list[int], candidates: int = -1) -> Iterator[int]:
    """Bron-Kerbosch with pivoting; yields each maximal clique as a bitmask."""
    N = len(adj)
    P = ((1 << N) - 1) if candidates < 0 else candidates
    stack = [(0, P, 0)]
    while stack:
        R, P, X = stack.pop()
        if not P and not X:
            yield R
            continue
        if not P:
            continue
        pivot = max(_bits(P | X), key=lambda u: popcount(P & adj[u]))
        for v in list(_bits(P & ~adj[pivot])):
            stack.append((R | (1 << v), P & adj[v], X & adj[v]))
            P &= ~(1 << v)
            X |= 1 << v


def max_clique(adj: list[int], node_budget: int = 10**7) -> int:
    """Maximum clique as a bitmask, by branch and bound with a greedy colouring bound."""
    N = len(adj)
    best = [0]
    nodes = [0]

    def colour_bound(P: int) -> int:
        colours = 0
        while P:
            colours += 1
            Q = P
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~adj[v] & ~low
                P &= ~low
        return colours

    def expand(R: int, size: int, P: int):
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise RuntimeError(f"max_clique exceeded {node_budget} search nodes")
        if not P:
            if size > popcount(best[0]):
                best[0] = R
            return
        if size + colour_bound(P) <= popcount(best[0]):
            return
        for v in list(_bits(P)):
            if size + popcount(P) <= popcount(best[0]):
                return
            expand(R | (1 << v), size + 1, P & adj[v])
            P &= ~(1 << v)

    expand(0, 0, (1 << N) - 1)
    return best[0]


def mask_to_list(mask: int) -> list[int]:
    return list(_bits(mask))
