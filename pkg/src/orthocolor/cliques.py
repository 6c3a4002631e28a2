"""Bitset clique routines over 0-based adjacency bitsets."""

from __future__ import annotations

from typing import Iterator, Sequence

from .graph import iter_bits


def maximal_cliques(adj: Sequence[int], candidates: int) -> Iterator[int]:
    """Bron-Kerbosch with Tomita pivoting, restricted to ``candidates``."""

    def expand(r: int, p: int, x: int):
        if not p and not x:
            yield r
            return
        pivot_pool = p | x
        best, pivot = -1, 0
        for u in iter_bits(pivot_pool):
            cnt = (p & adj[u]).bit_count()
            if cnt > best:
                best, pivot = cnt, u
        for u in iter_bits(p & ~adj[pivot]):
            bit = 1 << u
            yield from expand(r | bit, p & adj[u], x & adj[u])
            p &= ~bit
            x |= bit

    if candidates:
        yield from expand(0, candidates, 0)


def greedy_clique(adj: Sequence[int], candidates: int) -> int:
    """Grow a clique by repeatedly taking the candidate of largest remaining degree (lowest index on ties)."""
    clique = 0
    p = candidates
    while p:
        best, pick = -1, 0
        for u in iter_bits(p):
            d = (p & adj[u]).bit_count()
            if d > best:
                best, pick = d, u
        clique |= 1 << pick
        p &= adj[pick]
    return clique


def _color_bound(adj: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Greedy sequential coloring of ``p``; returns vertices and their cumulative color bounds."""
    order, bounds = [], []
    color = 0
    uncolored = p
    while uncolored:
        color += 1
        q = uncolored
        while q:
            low = q & -q
            u = low.bit_length() - 1
            uncolored &= ~low
            q &= ~low & ~adj[u]
            order.append(u)
            bounds.append(color)
    return order, bounds


def max_clique(adj: Sequence[int], candidates: int, lower: int = 0) -> int:
    """A maximum clique inside ``candidates`` (bitset); empty if none beats ``lower``.

    Branch and bound with greedy-coloring bounds. The result is deterministic
    for fixed inputs.
    """
    best = [0, lower]  # mask, size

    def expand(r: int, size: int, p: int):
        order, bounds = _color_bound(adj, p)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best[1]:
                return
            u = order[idx]
            bit = 1 << u
            nr = r | bit
            np_ = p & adj[u]
            if np_:
                expand(nr, size + 1, np_)
            elif size + 1 > best[1]:
                best[0], best[1] = nr, size + 1
            p &= ~bit

    if candidates:
        expand(0, 0, candidates)
    return best[0]


def clique_number(adj: Sequence[int], candidates: int) -> int:
    return max_clique(adj, candidates).bit_count()
