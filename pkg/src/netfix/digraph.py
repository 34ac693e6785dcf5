"""Signed digraphs and their structural parameters.

Vertices are ``0..n-1``. Every arc ``(u, v)`` carries a sign in ``{-1, 0, +1}``
and loops are allowed. A cycle is *non-negative* when the product of its arc
signs is ``>= 0``, so any cycle through a 0-signed arc counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from netfix.errors import CapExceeded, InputError

INFINITE = math.inf
"""Sentinel for the girth of a digraph without any non-negative cycle."""

DEFAULT_VERTEX_CAP = 20


class Sign(IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1

    @classmethod
    def parse(cls, token: str) -> "Sign":
        try:
            return _SIGN_TOKENS[token]
        except KeyError:
            raise InputError(f"unknown sign {token!r}; expected one of +, -, 0") from None

    @property
    def symbol(self) -> str:
        return {Sign.NEG: "-", Sign.ZERO: "0", Sign.POS: "+"}[self]


_SIGN_TOKENS = {"+": Sign.POS, "-": Sign.NEG, "0": Sign.ZERO, "+1": Sign.POS, "-1": Sign.NEG}


class DigraphSyntaxError(InputError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SignedDigraph:
    """Immutable signed digraph on ``range(n)``.

    ``arcs`` is an iterable of ``(source, target, sign)`` triples; a pair
    ``(source, target)`` may appear at most once.
    """

    __slots__ = ("n", "_sign", "_in", "_out", "_arcs")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int, int]] = ()):
        if n < 1:
            raise InputError(f"vertex count must be positive, got {n}")
        sign: dict[tuple[int, int], Sign] = {}
        for u, v, sg in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u}, {v}) out of range for {n} vertices")
            if (u, v) in sign:
                raise InputError(f"duplicate arc ({u}, {v})")
            sign[(u, v)] = Sign(sg)
        self.n = n
        self._sign = sign
        self._arcs = tuple(sorted((u, v, sg) for (u, v), sg in sign.items()))
        ins: list[list[tuple[int, Sign]]] = [[] for _ in range(n)]
        outs: list[list[tuple[int, Sign]]] = [[] for _ in range(n)]
        for u, v, sg in self._arcs:
            ins[v].append((u, sg))
            outs[u].append((v, sg))
        self._in = tuple(tuple(x) for x in ins)
        self._out = tuple(tuple(x) for x in outs)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def cycle(cls, n: int, sign: int = Sign.POS) -> "SignedDigraph":
        """Directed cycle ``0 -> 1 -> ... -> n-1 -> 0`` with all arcs signed ``sign``."""
        return cls(n, [(i, (i + 1) % n, sign) for i in range(n)])

    @classmethod
    def clique(cls, n: int, sign: int = Sign.POS, loops: bool = False) -> "SignedDigraph":
        arcs = [(u, v, sign) for u in range(n) for v in range(n) if u != v or loops]
        return cls(n, arcs)

    @classmethod
    def from_text(cls, text: str) -> "SignedDigraph":
        return parse_digraph(text)

    def to_text(self) -> str:
        lines = [f"vertices {self.n}"]
        lines += [f"arc {u} {v} {sg.symbol}" for u, v, sg in self._arcs]
        return "\n".join(lines) + "\n"

    # -- queries ---------------------------------------------------------------

    @property
    def arcs(self) -> tuple[tuple[int, int, Sign], ...]:
        return self._arcs

    def sign(self, u: int, v: int) -> Optional[Sign]:
        """Sign of arc ``(u, v)``, or ``None`` when absent."""
        return self._sign.get((u, v))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._sign

    def in_arcs(self, i: int) -> tuple[tuple[int, Sign], ...]:
        return self._in[i]

    def out_arcs(self, i: int) -> tuple[tuple[int, Sign], ...]:
        return self._out[i]

    def in_neighbours(self, i: int, sign: Optional[int] = None) -> tuple[int, ...]:
        """``N(i)`` or, with ``sign`` given, ``N^sign(i)``."""
        return tuple(j for j, sg in self._in[i] if sign is None or sg == sign)

    def loops(self) -> dict[int, Sign]:
        return {u: sg for u, v, sg in self._arcs if u == v}

    def is_loopless(self) -> bool:
        return not any(u == v for u, v, _ in self._arcs)

    def is_positive(self) -> bool:
        return all(sg == Sign.POS for *_, sg in self._arcs)

    def is_negative(self) -> bool:
        return all(sg == Sign.NEG for *_, sg in self._arcs)

    def is_unate(self) -> bool:
        return all(sg != Sign.ZERO for *_, sg in self._arcs)

    def unsigned(self) -> "SignedDigraph":
        return SignedDigraph(self.n, [(u, v, Sign.ZERO) for u, v, _ in self._arcs])

    def without_negative_loops(self) -> "SignedDigraph":
        return SignedDigraph(
            self.n, [(u, v, sg) for u, v, sg in self._arcs if not (u == v and sg == Sign.NEG)]
        )

    def with_arcs(self, extra: Iterable[tuple[int, int, int]]) -> "SignedDigraph":
        return SignedDigraph(self.n, list(self._arcs) + list(extra))

    def relabel(self, perm: Sequence[int]) -> "SignedDigraph":
        """Image of the digraph under the vertex map ``v -> perm[v]``."""
        return SignedDigraph(self.n, [(perm[u], perm[v], sg) for u, v, sg in self._arcs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedDigraph):
            return NotImplemented
        return self.n == other.n and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self.n, self._arcs))

    def __repr__(self) -> str:
        body = ", ".join(f"{u}{sg.symbol}>{v}" for u, v, sg in self._arcs)
        return f"SignedDigraph(n={self.n}, [{body}])"


def parse_digraph(text: str) -> SignedDigraph:
    """Parse the ``vertices``/``arc`` text format.

    Lines may appear in any order; ``#`` starts a comment.
    """
    n: Optional[int] = None
    arcs: list[tuple[int, int, Sign, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "vertices":
            if len(fields) != 2:
                raise DigraphSyntaxError(lineno, "expected 'vertices <n>'")
            if n is not None:
                raise DigraphSyntaxError(lineno, "'vertices' given twice")
            n = _parse_int(fields[1], lineno)
            if n < 1:
                raise DigraphSyntaxError(lineno, "vertex count must be positive")
        elif fields[0] == "arc":
            if len(fields) != 4:
                raise DigraphSyntaxError(lineno, "expected 'arc <u> <v> <sign>'")
            u, v = _parse_int(fields[1], lineno), _parse_int(fields[2], lineno)
            try:
                sg = Sign.parse(fields[3])
            except InputError as exc:
                raise DigraphSyntaxError(lineno, str(exc)) from None
            arcs.append((u, v, sg, lineno))
        else:
            raise DigraphSyntaxError(lineno, f"unknown directive {fields[0]!r}")
    if n is None:
        raise InputError("missing 'vertices <n>' line")
    seen: set[tuple[int, int]] = set()
    for u, v, _, lineno in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphSyntaxError(lineno, f"vertex out of range in arc ({u}, {v})")
        if (u, v) in seen:
            raise DigraphSyntaxError(lineno, f"duplicate arc ({u}, {v})")
        seen.add((u, v))
    return SignedDigraph(n, [(u, v, sg) for u, v, sg, _ in arcs])


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DigraphSyntaxError(lineno, f"expected an integer, got {token!r}") from None


# -- degrees ------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeStats:
    """In-degree counts per sign class. Loops count toward their own vertex."""

    d: tuple[int, ...]
    d_plus: tuple[int, ...]
    d_minus: tuple[int, ...]
    d_zero: tuple[int, ...]

    @property
    def delta(self) -> int:
        return min(self.d)

    @property
    def Delta(self) -> int:
        return max(self.d)

    @property
    def mean(self) -> float:
        return sum(self.d) / len(self.d)

    @property
    def delta_zero(self) -> int:
        return min(self.d_zero)

    @property
    def delta_plus(self) -> int:
        return min(self.d_plus)

    @property
    def delta_minus(self) -> int:
        return min(self.d_minus)

    @property
    def delta_pm(self) -> int:
        return min(p + m for p, m in zip(self.d_plus, self.d_minus))


def degree_stats(D: SignedDigraph) -> DegreeStats:
    d, dp, dm, dz = [], [], [], []
    for i in range(D.n):
        signs = [sg for _, sg in D.in_arcs(i)]
        d.append(len(signs))
        dp.append(signs.count(Sign.POS))
        dm.append(signs.count(Sign.NEG))
        dz.append(signs.count(Sign.ZERO))
    return DegreeStats(tuple(d), tuple(dp), tuple(dm), tuple(dz))


# -- cycles -------------------------------------------------------------------


def cycle_sign(D: SignedDigraph, cycle: Sequence[int]) -> Sign:
    """Product of arc signs along ``cycle`` (vertex sequence, closing arc implied)."""
    if not cycle:
        raise InputError("empty vertex sequence is not a cycle")
    if len(set(cycle)) != len(cycle):
        raise InputError(f"{list(cycle)} repeats a vertex")
    product = 1
    for k, u in enumerate(cycle):
        v = cycle[(k + 1) % len(cycle)]
        sg = D.sign(u, v)
        if sg is None:
            raise InputError(f"{list(cycle)} is not a cycle: missing arc ({u}, {v})")
        product *= int(sg)
    return Sign(product)


def simple_cycles(D: SignedDigraph, allowed: Optional[Iterable[int]] = None) -> Iterator[tuple[tuple[int, ...], Sign]]:
    """Every simple cycle of ``D[allowed]`` once, rooted at its smallest vertex."""
    verts = sorted(range(D.n) if allowed is None else set(allowed))
    inside = set(verts)
    for start in verts:
        loop = D.sign(start, start)
        if loop is not None:
            yield (start,), loop
        path = [start]
        on_path = {start}

        def walk(u: int, sign: int) -> Iterator[tuple[tuple[int, ...], Sign]]:
            for w, sg in D.out_arcs(u):
                if w == start and u != start:
                    yield tuple(path), Sign(sign * sg)
                elif w > start and w in inside and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from walk(w, sign * sg)
                    path.pop()
                    on_path.discard(w)

        yield from walk(start, 1)


def nonneg_girth(D: SignedDigraph, allowed: Optional[Iterable[int]] = None) -> float:
    """Length of a shortest non-negative cycle of ``D[allowed]``; ``INFINITE`` if none.

    Depth-first search over simple cycles rooted at their smallest vertex,
    pruned against the best length found so far.
    """
    verts = sorted(range(D.n) if allowed is None else set(allowed))
    inside = set(verts)
    for v in verts:
        loop = D.sign(v, v)
        if loop is not None and loop >= 0:
            return 1
    best = INFINITE
    for start in verts:
        on_path = {start}

        def walk(u: int, length: int, sign: int) -> None:
            nonlocal best
            for w, sg in D.out_arcs(u):
                if w == start:
                    if u != start and sign * sg >= 0 and length + 1 < best:
                        best = length + 1
                elif w > start and w in inside and w not in on_path and length + 2 < best:
                    on_path.add(w)
                    walk(w, length + 1, sign * sg)
                    on_path.discard(w)

        walk(start, 0, 1)
        if best == 2:
            break
    return best


def has_nonneg_cycle(D: SignedDigraph, allowed: Optional[Iterable[int]] = None) -> bool:
    return nonneg_girth(D, allowed) != INFINITE


def _check_cap(D: SignedDigraph, cap: int) -> None:
    if D.n > cap:
        raise CapExceeded(f"instance too large: {D.n} vertices exceeds the exact-search cap of {cap}")


def min_nonneg_fvs(D: SignedDigraph, cap: int = DEFAULT_VERTEX_CAP) -> tuple[int, ...]:
    """A minimum vertex set whose removal leaves no non-negative cycle."""
    _check_cap(D, cap)
    everything = frozenset(range(D.n))
    # vertices with a non-negative loop belong to every feedback set
    forced = tuple(v for v, sg in D.loops().items() if sg >= 0)
    rest = [v for v in range(D.n) if v not in forced]
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            U = forced + extra
            if not has_nonneg_cycle(D, everything.difference(U)):
                return tuple(sorted(U))
    raise AssertionError("removing every vertex always works")


def k_plus(D: SignedDigraph, cap: int = DEFAULT_VERTEX_CAP) -> int:
    return len(min_nonneg_fvs(D, cap))


def max_disjoint_nonneg_cycles(D: SignedDigraph, cap: int = DEFAULT_VERTEX_CAP) -> list[tuple[int, ...]]:
    """A maximum family of vertex-disjoint non-negative cycles."""
    _check_cap(D, cap)

    @lru_cache(maxsize=None)
    def best(remaining: frozenset) -> tuple[tuple[int, ...], ...]:
        girth = nonneg_girth(D, remaining)
        if girth == INFINITE:
            return ()
        v = min(remaining)
        # either v is not covered...
        answer = best(remaining - {v})
        ceiling = len(remaining) // girth
        if len(answer) >= ceiling:
            return answer
        # ...or it lies on one of the chosen cycles
        for cyc, sg in _cycles_through(D, v, remaining):
            if sg < 0:
                continue
            cand = (cyc,) + best(remaining.difference(cyc))
            if len(cand) > len(answer):
                answer = cand
                if len(answer) >= ceiling:
                    break
        return answer

    return list(best(frozenset(range(D.n))))


def _cycles_through(D: SignedDigraph, v: int, allowed: frozenset) -> Iterator[tuple[tuple[int, ...], Sign]]:
    # v is the minimum of `allowed`, so rooted enumeration from v is exhaustive
    for cyc, sg in simple_cycles(D, allowed):
        if cyc[0] != v:
            return
        yield cyc, sg


def c_plus(D: SignedDigraph, cap: int = DEFAULT_VERTEX_CAP) -> int:
    return len(max_disjoint_nonneg_cycles(D, cap))


@dataclass(frozen=True)
class StructuralParams:
    gamma_plus: float
    k_plus: int
    c_plus: int


def structural_params(D: SignedDigraph, cap: int = DEFAULT_VERTEX_CAP) -> StructuralParams:
    return StructuralParams(nonneg_girth(D), k_plus(D, cap), c_plus(D, cap))


def is_subgraph(D: SignedDigraph, Dp: SignedDigraph) -> bool:
    """``D`` is a subgraph of ``Dp``: arcs included, and every non-zero sign of
    ``Dp`` is matched in ``D`` (0-signed arcs of ``Dp`` accept any sign)."""
    if D.n != Dp.n:
        raise InputError(f"vertex counts differ: {D.n} vs {Dp.n}")
    for u, v, sg in D.arcs:
        other = Dp.sign(u, v)
        if other is None:
            return False
        if other != Sign.ZERO and other != sg:
            return False
    return True
