"""Codes over ``[s]^n`` under the Hamming, Max- and min-distances.

Exact maximum codes come from a maximum independent set of the conflict
graph (states at distance below ``d`` are joined), so they are only
practical for desk-sized ``s**n``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from netfix import mis
from netfix.digraph import INFINITE
from netfix.errors import CapExceeded, InputError
from netfix.states import DistanceKind, State, all_states, distance, format_state, parse_header, parse_state

DEFAULT_CODE_CAP = 2**12


@dataclass(frozen=True)
class Code:
    n: int
    s: int
    codewords: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        words = tuple(sorted({tuple(int(c) for c in w) for w in self.codewords}))
        if len(words) != len(self.codewords):
            raise InputError("duplicate codewords")
        for w in words:
            if len(w) != self.n or any(not 0 <= c < self.s for c in w):
                raise InputError(f"{w} is not a state of [{self.s}]^{self.n}")
        object.__setattr__(self, "codewords", words)

    @classmethod
    def of(cls, words: Iterable[Sequence[int]], n: int, s: int) -> "Code":
        return cls(n, s, tuple(tuple(w) for w in words))

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self):
        return (State(w, self.s) for w in self.codewords)

    def __contains__(self, x) -> bool:
        return tuple(x) in set(self.codewords)

    def min_distance(self, kind: DistanceKind) -> float:
        return min_distance(self, kind)

    def to_text(self) -> str:
        lines = [f"code n={self.n} s={self.s}"] + [format_state(w) for w in self.codewords]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Code":
        return parse_code(text)


def parse_code(text: str) -> Code:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty code file")
    n, s = parse_header(lines[0], "code")
    return Code.of((parse_state(ln) for ln in lines[1:]), n, s)


def min_distance(C: Code, kind: DistanceKind) -> float:
    """Smallest distance between distinct codewords; ``INFINITE`` for ``|C| <= 1``."""
    if len(C) <= 1:
        return INFINITE
    return min(distance(a, b, kind) for a, b in combinations(C.codewords, 2))


def _conflict_adjacency(states: Sequence[Sequence[int]], d: int, kind: DistanceKind) -> list[int]:
    S = np.array(states, dtype=np.int16)
    N, n = S.shape
    chunk = max(1, (1 << 22) // (N * max(n, 1)))
    rows: list[int] = []
    for start in range(0, N, chunk):
        X = S[start : start + chunk, None, :]
        up = (X < S[None]).sum(-1)
        down = (X > S[None]).sum(-1)
        if kind is DistanceKind.HAMMING:
            dist = up + down
        elif kind is DistanceKind.MAX:
            dist = np.maximum(up, down)
        else:
            dist = np.minimum(up, down)
        conflict = dist < d
        conflict[np.arange(X.shape[0]), np.arange(start, start + X.shape[0])] = False
        packed = np.packbits(conflict, axis=1, bitorder="little")
        rows.extend(int.from_bytes(r.tobytes(), "little") for r in packed)
    return rows


def _max_code_on(states: list[tuple[int, ...]], d: int, kind: DistanceKind) -> list[tuple[int, ...]]:
    if d <= 0 or len(states) <= 1:
        return list(states)
    chosen = mis.max_independent_set(_conflict_adjacency(states, d, kind))
    return [states[k] for k in chosen]


def max_code(n: int, d: int, s: int, kind: DistanceKind, cap: int = DEFAULT_CODE_CAP) -> Code:
    """A largest code in ``[s]^n`` with minimum ``kind``-distance at least ``d``."""
    if s**n > cap:
        raise CapExceeded(f"{s}^{n} states exceed the exact code-search cap of {cap}")
    return Code.of(_max_code_on(list(all_states(n, s)), d, kind), n, s)


@lru_cache(maxsize=None)
def A(n: int, d: int, s: int, kind: DistanceKind, cap: int = DEFAULT_CODE_CAP) -> int:
    """``A_kind(n, d, s)`` by exact search (memoized)."""
    return len(max_code(n, d, s, kind, cap))


def constant_weight_states(n: int, w: int) -> list[tuple[int, ...]]:
    out = []
    for ones in combinations(range(n), w):
        x = [0] * n
        for i in ones:
            x[i] = 1
        out.append(tuple(x))
    return sorted(out)


def max_constant_weight_code(n: int, d: int, w: int, cap: int = DEFAULT_CODE_CAP) -> Code:
    """A largest binary weight-``w`` code with minimum Hamming distance ``d``."""
    if not 0 <= w <= n:
        raise InputError(f"weight {w} outside [0, {n}]")
    if math.comb(n, w) > cap:
        raise CapExceeded(f"C({n},{w}) states exceed the exact code-search cap of {cap}")
    return Code.of(_max_code_on(constant_weight_states(n, w), d, DistanceKind.HAMMING), n, 2)


@lru_cache(maxsize=None)
def A_constant_weight(n: int, d: int, w: int, cap: int = DEFAULT_CODE_CAP) -> int:
    return len(max_constant_weight_code(n, d, w, cap))


def level(n: int, w: int, s: int) -> list[tuple[int, ...]]:
    """``B(n, w, s)``: the states of weight ``w``."""
    return [x for x in all_states(n, s) if sum(x) == w]


def sperner_antichain(n: int, s: int) -> Code:
    """The middle level ``B(n, floor(n(s-1)/2), s)``, a largest antichain of ``[s]^n``."""
    return Code.of(level(n, n * (s - 1) // 2, s), n, s)


_CHAIN_STEPS = ((1, 1, 0), (0, 1, 1), (1, 0, 1))


def chain_code_k3(s: int) -> list[State]:
    """Chain in ``[s]^3`` built by cycling the increments (1,1,0), (0,1,1), (1,0,1).

    Any two terms differ by at least 2 coordinates, all in the same
    direction; the chain has ``floor(3(s-1)/2) + 1`` terms.
    """
    if s < 2:
        raise InputError(f"alphabet size must be at least 2, got {s}")
    length = 3 * (s - 1) // 2 + 1
    c = (0, 0, 0)
    out = [State(c, s)]
    for k in range(length - 1):
        c = tuple(a + b for a, b in zip(c, _CHAIN_STEPS[k % 3]))
        out.append(State(c, s))
    return out


def moments(x: Sequence[int]) -> tuple[int, int, int]:
    """``(sum x_i, sum i x_i, sum i^2 x_i)`` with positions counted from 1."""
    w0 = w1 = w2 = 0
    for pos, c in enumerate(x, start=1):
        w0 += c
        w1 += pos * c
        w2 += pos * pos * c
    return w0, w1, w2


def moment_code(n: int, s: int, m: Sequence[int]) -> Code:
    """States whose three weighted sums equal ``m``; distinct members are at min-distance >= 2."""
    m = tuple(m)
    if len(m) != 3 or any(v < 0 for v in m):
        raise InputError(f"moment vector must be three non-negative integers, got {m}")
    return Code.of((x for x in all_states(n, s) if moments(x) == m), n, s)


def moment_fibers(n: int, s: int) -> dict[tuple[int, int, int], list[tuple[int, ...]]]:
    fibers: dict[tuple[int, int, int], list[tuple[int, ...]]] = defaultdict(list)
    for x in all_states(n, s):
        fibers[moments(x)].append(x)
    return dict(fibers)


def best_moment_code(n: int, s: int) -> tuple[tuple[int, int, int], Code]:
    """A largest moment fiber; ties go to the smallest moment vector."""
    fibers = moment_fibers(n, s)
    m = min(fibers, key=lambda key: (-len(fibers[key]), key))
    return m, Code.of(fibers[m], n, s)


def moment_counting_bound(n: int, s: int) -> float:
    return s**n / ((n * (s - 1) + 1) * (n**2 * (s - 1) + 1) * (n**3 * (s - 1) + 1))


@dataclass
class DistanceChain:
    n: int
    d: int
    values: dict[str, float]
    holds: bool
    failures: list[str]


def check_distance_chain(n: int, d: int, cap: int = DEFAULT_CODE_CAP) -> DistanceChain:
    """Exact check of the binary chain

    ``A_H(n,2d)/(2 sqrt(2n)) <= A_H(n,2d,floor(n/2)) <= A_m(n,d) <= A_H(n,2d)
    <= A_M(n,d) <= d A_H(n,2d-1)``.
    """
    if d < 1:
        raise InputError(f"d must be positive, got {d}")
    H = DistanceKind.HAMMING
    v = {
        "A_H(n,2d)/(2sqrt(2n))": A(n, 2 * d, 2, H, cap) / (2 * math.sqrt(2 * n)),
        "A_H(n,2d,n/2)": A_constant_weight(n, 2 * d, n // 2, cap),
        "A_m(n,d)": A(n, d, 2, DistanceKind.MIN, cap),
        "A_H(n,2d)": A(n, 2 * d, 2, H, cap),
        "A_M(n,d)": A(n, d, 2, DistanceKind.MAX, cap),
        "d*A_H(n,2d-1)": d * A(n, 2 * d - 1, 2, H, cap),
    }
    names = list(v)
    failures = [f"{a} > {b}" for a, b in zip(names, names[1:]) if v[a] > v[b]]
    return DistanceChain(n, d, v, not failures, failures)
