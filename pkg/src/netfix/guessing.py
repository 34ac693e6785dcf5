"""Guessing graphs and exact guessing numbers.

Two states are adjacent in ``G(D, s)`` when no network on ``D`` fixes both,
which happens exactly when for some vertex ``i`` one of them is below the
other in ``<=_i`` while being strictly above it at coordinate ``i``. The
guessing number is ``log_s`` of the independence number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

import numpy as np

from netfix import mis
from netfix.digraph import Sign, SignedDigraph
from netfix.errors import CapExceeded, InputError
from netfix.states import State, all_states, decode, encode, frustrated_boundary, is_frustrated, leq_i

DEFAULT_MATERIALIZE_CAP = 2**22
DEFAULT_SOLVER_CAP = 2**16

# keeps the broadcast (chunk, N, n) arrays around a few megabytes
_CHUNK_CELLS = 1 << 22


def is_edge(D: SignedDigraph, s: int, x: Sequence[int], y: Sequence[int]) -> bool:
    if len(x) != len(y) or len(x) != D.n:
        raise InputError(f"dimension mismatch: {len(x)}, {len(y)} for {D.n} vertices")
    if tuple(x) == tuple(y):
        return False
    for i in range(D.n):
        if x[i] > y[i] and leq_i(D, i, x, y):
            return True
        if y[i] > x[i] and leq_i(D, i, y, x):
            return True
    return False


def _arc_index(D: SignedDigraph, i: int) -> tuple[list[int], list[int], list[int]]:
    plus = [j for j, sg in D.in_arcs(i) if sg == Sign.POS]
    minus = [j for j, sg in D.in_arcs(i) if sg == Sign.NEG]
    zero = [j for j, sg in D.in_arcs(i) if sg == Sign.ZERO]
    return plus, minus, zero


def _edge_blocks(D: SignedDigraph, s: int) -> Iterator[np.ndarray]:
    """Boolean adjacency rows of ``G(D, s)`` in chunks, encoding order."""
    n = D.n
    S = np.array(list(all_states(n, s)), dtype=np.int16)
    N = len(S)
    chunk = max(1, _CHUNK_CELLS // (N * n))
    index = [_arc_index(D, i) for i in range(n)]
    Y = S[None, :, :]
    for start in range(0, N, chunk):
        X = S[start : start + chunk, None, :]
        E = np.zeros((X.shape[0], N), dtype=bool)
        for i, (plus, minus, zero) in enumerate(index):
            fwd = X[..., i] > Y[..., i]  # x <=_i y with x_i > y_i
            bwd = X[..., i] < Y[..., i]  # y <=_i x with y_i > x_i
            if plus:
                fwd = fwd & (X[..., plus] <= Y[..., plus]).all(-1)
                bwd = bwd & (X[..., plus] >= Y[..., plus]).all(-1)
            if minus:
                fwd = fwd & (X[..., minus] >= Y[..., minus]).all(-1)
                bwd = bwd & (X[..., minus] <= Y[..., minus]).all(-1)
            if zero:
                eq = (X[..., zero] == Y[..., zero]).all(-1)
                fwd = fwd & eq
                bwd = bwd & eq
            E |= fwd | bwd
        yield E


def _materialize(D: SignedDigraph, s: int) -> list[int]:
    rows: list[int] = []
    for block in _edge_blocks(D, s):
        packed = np.packbits(block, axis=1, bitorder="little")
        rows.extend(int.from_bytes(r.tobytes(), "little") for r in packed)
    return rows


class GuessingGraph:
    """``G(D, s)`` on the states of ``[s]^n``, indexed by their encoding.

    With ``adjacency`` set, edge queries read bitset rows; otherwise they go
    through the pure predicate :func:`is_edge`.
    """

    def __init__(self, D: SignedDigraph, s: int, adjacency: Optional[list[int]] = None):
        if s < 2:
            raise InputError(f"alphabet size must be at least 2, got {s}")
        self.D = D
        self.s = s
        self.n = D.n
        self.size = s**D.n
        self.adjacency = adjacency

    @property
    def materialized(self) -> bool:
        return self.adjacency is not None

    def state(self, index: int) -> State:
        return State(decode(index, self.n, self.s), self.s)

    def index(self, x: Sequence[int]) -> int:
        return encode(x, self.s)

    def has_edge(self, x: Sequence[int], y: Sequence[int]) -> bool:
        if self.adjacency is None:
            return is_edge(self.D, self.s, x, y)
        return bool(self.adjacency[self.index(x)] >> self.index(y) & 1)

    def neighbours(self, x: Sequence[int]) -> list[State]:
        if self.adjacency is None:
            return [State(y, self.s) for y in all_states(self.n, self.s) if is_edge(self.D, self.s, x, y)]
        return [self.state(k) for k in mis._bits(self.adjacency[self.index(x)])]

    def degree(self, x: Sequence[int]) -> int:
        if self.adjacency is None:
            return len(self.neighbours(x))
        return bin(self.adjacency[self.index(x)]).count("1")

    def edge_count(self) -> int:
        if self.adjacency is None:
            raise InputError("edge_count needs a materialized graph")
        return sum(bin(r).count("1") for r in self.adjacency) // 2

    def is_complete(self) -> bool:
        return self.edge_count() == self.size * (self.size - 1) // 2

    def is_empty(self) -> bool:
        return self.edge_count() == 0

    def is_independent(self, states: Sequence[Sequence[int]]) -> bool:
        states = list(states)
        for a, b in combinations(states, 2):
            if self.has_edge(a, b):
                return False
        return True


def build_guessing_graph(
    D: SignedDigraph, s: int, materialize: bool = True, cap: int = DEFAULT_MATERIALIZE_CAP
) -> GuessingGraph:
    if not materialize:
        return GuessingGraph(D, s)
    if s**D.n > cap:
        raise CapExceeded(f"{s}^{D.n} states exceed the materialization cap of {cap}")
    return GuessingGraph(D, s, _materialize(D, s))


@dataclass
class GuessingResult:
    alpha: int
    s: int
    witness: list[State] = field(repr=False)
    canonical: bool = True

    @property
    def g(self) -> float:
        return math.log(self.alpha, self.s) if self.alpha > 1 else 0.0

    @property
    def g_integer(self) -> Optional[int]:
        """``g`` when ``alpha`` is an exact power of ``s``, else ``None``."""
        k, power = 0, 1
        while power < self.alpha:
            power *= self.s
            k += 1
        return k if power == self.alpha else None


def alpha(G: GuessingGraph, cap: int = DEFAULT_SOLVER_CAP) -> GuessingResult:
    """Exact independence number of ``G`` with one maximum independent set."""
    if G.size > cap:
        raise CapExceeded(
            f"{G.size} states exceed the exact solver cap of {cap}; use bound-only mode (netfix bounds)"
        )
    if G.adjacency is None:
        G = build_guessing_graph(G.D, G.s)
    chosen = mis.max_independent_set(G.adjacency)
    return GuessingResult(len(chosen), G.s, [G.state(k) for k in chosen])


def guessing_number(D: SignedDigraph, s: int, cap: int = DEFAULT_SOLVER_CAP) -> GuessingResult:
    if s**D.n > cap:
        raise CapExceeded(f"{s}^{D.n} states exceed the exact solver cap of {cap}; use bound-only mode")
    return alpha(build_guessing_graph(D, s), cap)


# -- degrees ------------------------------------------------------------------


def degree_by_formula(D: SignedDigraph, x: Sequence[int]) -> int:
    """Degree of ``x`` in ``G(D, 2)`` by inclusion-exclusion over frustrated vertex sets."""
    if getattr(x, "s", 2) != 2 or any(c not in (0, 1) for c in x):
        raise InputError("the degree formula is for binary states only")
    if not D.is_loopless():
        raise InputError("the degree formula is only established for loopless digraphs")
    n = D.n
    total = 0
    for r in range(1, n + 1):
        for I in combinations(range(n), r):
            inside = set(I)
            if not all(is_frustrated(D, (j, i), x) for i in I for j, _ in D.in_arcs(i) if j in inside):
                continue
            reach = inside.union(j for i in I for j, _ in D.in_arcs(i))
            total += (-1) ** (r - 1) * 2 ** (n - len(reach) + len(frustrated_boundary(D, I, x)))
    return total


def edge_count_at_vertex(D: SignedDigraph, s: int, x: Sequence[int], i: int) -> int:
    """Number of ``y`` with ``xy`` in ``E_i(D, s)``, in closed form.

    A positive or zero loop on ``i`` empties ``E_i``; a negative loop changes nothing.
    """
    loop = D.sign(i, i)
    if loop is not None and loop != Sign.NEG:
        return 0
    others = [(j, sg) for j, sg in D.in_arcs(i) if j != i]
    below = x[i]  # choices y_i < x_i
    above = s - 1 - x[i]  # choices y_i > x_i
    for j, sg in others:
        if sg == Sign.POS:
            below *= s - x[j]
            above *= x[j] + 1
        elif sg == Sign.NEG:
            below *= x[j] + 1
            above *= s - x[j]
    return s ** (D.n - 1 - len(others)) * (below + above)


def edge_count_direct(D: SignedDigraph, s: int, x: Sequence[int], i: int) -> int:
    count = 0
    for y in all_states(D.n, s):
        if (x[i] > y[i] and leq_i(D, i, x, y)) or (y[i] > x[i] and leq_i(D, i, y, x)):
            count += 1
    return count
