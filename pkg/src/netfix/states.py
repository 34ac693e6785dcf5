"""The state space ``[s]^n``: encoding, weights, local orders and code distances.

States are integer tuples. ``State`` is a tuple that also remembers its
alphabet size so that mixing alphabets is caught early; every function here
accepts plain tuples as well.
"""

from __future__ import annotations

from enum import Enum
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from netfix.digraph import Sign, SignedDigraph
from netfix.errors import InputError


class State(tuple):
    """A point of ``[s]^n``, coordinates ``x_0..x_{n-1}``."""

    def __new__(cls, coords: Iterable[int], s: int):
        coords = tuple(int(c) for c in coords)
        if s < 2:
            raise InputError(f"alphabet size must be at least 2, got {s}")
        for c in coords:
            if not 0 <= c < s:
                raise InputError(f"coordinate {c} outside [0, {s - 1}]")
        obj = super().__new__(cls, coords)
        obj.s = s
        return obj

    def __getnewargs__(self):
        return (tuple(self), self.s)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def encode(self) -> int:
        return encode(self, self.s)

    @classmethod
    def decode(cls, code: int, n: int, s: int) -> "State":
        return cls(decode(code, n, s), s)

    @classmethod
    def parse(cls, literal: str, s: int) -> "State":
        return cls(parse_state(literal), s)

    def __str__(self) -> str:
        return format_state(self)

    def __repr__(self) -> str:
        return f"State(({', '.join(map(str, self))}), s={self.s})"


class DistanceKind(Enum):
    HAMMING = "hamming"
    MAX = "max"
    MIN = "min"


def encode(x: Sequence[int], s: int) -> int:
    """Lexicographic index of ``x`` (``x_0`` most significant)."""
    code = 0
    for c in x:
        code = code * s + c
    return code


def decode(code: int, n: int, s: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        code, out[i] = divmod(code, s)
    return tuple(out)


def all_states(n: int, s: int) -> Iterator[tuple[int, ...]]:
    """``[s]^n`` in encoding order."""
    return product(range(s), repeat=n)


def parse_state(literal: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in literal.strip().split(","))
    except ValueError:
        raise InputError(f"bad state literal {literal!r}; expected comma-separated digits") from None


def format_state(x: Sequence[int]) -> str:
    return ",".join(str(c) for c in x)


def _check_pair(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise InputError(f"dimension mismatch: {len(x)} vs {len(y)}")
    sx, sy = getattr(x, "s", None), getattr(y, "s", None)
    if sx is not None and sy is not None and sx != sy:
        raise InputError(f"alphabet mismatch: {sx} vs {sy}")


def L(x: Sequence[int], y: Sequence[int]) -> int:
    """Number of coordinates with ``x_i < y_i``."""
    _check_pair(x, y)
    return sum(a < b for a, b in zip(x, y))


def distance(x: Sequence[int], y: Sequence[int], kind: DistanceKind) -> int:
    _check_pair(x, y)
    up = sum(a < b for a, b in zip(x, y))
    down = sum(a > b for a, b in zip(x, y))
    if kind is DistanceKind.HAMMING:
        return up + down
    if kind is DistanceKind.MAX:
        return max(up, down)
    if kind is DistanceKind.MIN:
        return min(up, down)
    raise InputError(f"unknown distance kind {kind!r}")


def hamming(x: Sequence[int], y: Sequence[int]) -> int:
    return distance(x, y, DistanceKind.HAMMING)


def weight(x: Sequence[int]) -> int:
    return sum(x)


def leq_i(D: SignedDigraph, i: int, x: Sequence[int], y: Sequence[int]) -> bool:
    """The local order ``x <=_i y``: equal on ``N^0(i)``, below on ``N^+(i)``,
    above on ``N^-(i)``; other coordinates are free."""
    _check_pair(x, y)
    if len(x) != D.n:
        raise InputError(f"state length {len(x)} does not match {D.n} vertices")
    for j, sg in D.in_arcs(i):
        if sg == Sign.ZERO:
            if x[j] != y[j]:
                return False
        elif sg == Sign.POS:
            if x[j] > y[j]:
                return False
        elif x[j] < y[j]:
            return False
    return True


def _require_binary(x: Sequence[int], s: Optional[int]) -> None:
    s = getattr(x, "s", s)
    if s is not None and s != 2:
        raise InputError(f"frustration is defined for s = 2 only, got s = {s}")
    if any(c not in (0, 1) for c in x):
        raise InputError("frustration is defined for binary states only")


def is_frustrated(D: SignedDigraph, arc: tuple[int, int], x: Sequence[int], s: Optional[int] = None) -> bool:
    """Arc ``(j, i)`` is x-frustrated: a positive arc whose ends differ or a
    negative arc whose ends agree. Zero arcs never are."""
    _require_binary(x, s)
    j, i = arc
    sg = D.sign(j, i)
    if sg is None:
        raise InputError(f"({j}, {i}) is not an arc")
    if sg == Sign.POS:
        return x[j] != x[i]
    if sg == Sign.NEG:
        return x[j] == x[i]
    return False


def frustrated_boundary(D: SignedDigraph, I: Iterable[int], x: Sequence[int], s: Optional[int] = None) -> frozenset:
    """``N(I, x)``: vertices of ``N(I) \\ I`` all of whose arcs into ``I`` are frustrated."""
    _require_binary(x, s)
    I = frozenset(I)
    into: dict[int, bool] = {}
    for i in I:
        for j, sg in D.in_arcs(i):
            if j in I:
                continue
            ok = (sg == Sign.POS and x[j] != x[i]) or (sg == Sign.NEG and x[j] == x[i])
            into[j] = into.get(j, True) and ok
    return frozenset(j for j, ok in into.items() if ok)


def parse_header(line: str, keyword: str) -> tuple[int, int]:
    fields = line.split()
    if not fields or fields[0] != keyword:
        raise InputError(f"expected header '{keyword} n=<n> s=<s>', got {line!r}")
    params = {}
    for tok in fields[1:]:
        key, _, val = tok.partition("=")
        try:
            params[key] = int(val)
        except ValueError:
            raise InputError(f"bad header field {tok!r}") from None
    if set(params) != {"n", "s"}:
        raise InputError(f"header needs exactly n= and s=, got {line!r}")
    if params["n"] < 1 or params["s"] < 2:
        raise InputError(f"invalid header values in {line!r}")
    return params["n"], params["s"]
