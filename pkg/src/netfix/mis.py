"""Exact maximum independent set by branch and bound.

Graphs are given as adjacency bitsets: ``adj[v]`` is an int whose bit ``u`` is
set when ``uv`` is an edge. The search looks for a maximum clique of the
complement with greedy colouring bounds (Tomita-style), visiting vertices in
a fixed order so the returned witness is reproducible.
"""

from __future__ import annotations

from typing import Sequence


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def max_clique(adj: Sequence[int]) -> list[int]:
    """A maximum clique of the graph ``adj`` (no self-loops expected)."""
    n = len(adj)
    if n == 0:
        return []
    # order by degree, highest first; ties by index. Bit k of the internal
    # sets stands for vertex order[k].
    order = sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    rank = {v: k for k, v in enumerate(order)}
    radj = [0] * n
    for v in range(n):
        mask = 0
        for u in _bits(adj[v]):
            if u != v:
                mask |= 1 << rank[u]
        radj[rank[v]] = mask

    best: list[int] = []
    current: list[int] = []

    def colour_sort(P: int) -> tuple[list[int], list[int]]:
        verts, colours = [], []
        uncoloured = P
        c = 0
        while uncoloured:
            c += 1
            Q = uncoloured
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~radj[v] & ~low
                uncoloured &= ~low
                verts.append(v)
                colours.append(c)
        return verts, colours

    def expand(P: int) -> None:
        nonlocal best
        verts, colours = colour_sort(P)
        for k in range(len(verts) - 1, -1, -1):
            if len(current) + colours[k] <= len(best):
                return
            v = verts[k]
            current.append(v)
            NP = P & radj[v]
            if NP:
                expand(NP)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            P &= ~(1 << v)

    expand((1 << n) - 1)
    return sorted(order[k] for k in best)


def complement(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    return [(full ^ adj[v]) & ~(1 << v) for v in range(n)]


def max_independent_set(adj: Sequence[int]) -> list[int]:
    """A maximum independent set, as a sorted list of vertex indices."""
    n = len(adj)
    # isolated vertices belong to some maximum independent set; set them aside
    isolated = [v for v in range(n) if not adj[v] & ~(1 << v)]
    rest = [v for v in range(n) if adj[v] & ~(1 << v)]
    if not rest:
        return isolated
    pos = {v: k for k, v in enumerate(rest)}
    sub = []
    for v in rest:
        mask = 0
        for u in _bits(adj[v]):
            if u in pos and u != v:
                mask |= 1 << pos[u]
        sub.append(mask)
    chosen = [rest[k] for k in max_clique(complement(sub))]
    return sorted(isolated + chosen)


def is_independent(adj: Sequence[int], vertices: Sequence[int]) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(not (adj[v] & mask & ~(1 << v)) for v in vertices)
