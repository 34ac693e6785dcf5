"""Explicit networks on signed digraphs.

A :class:`Network` maps ``[s]^n`` to itself, either through a full table
indexed by state encoding or through a rule evaluated on demand. This module
builds networks realizing prescribed fixed points, checks membership in
``F(D, s)``, recovers signed interaction graphs and simulates dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from netfix.digraph import Sign, SignedDigraph
from netfix.errors import CapExceeded, InputError
from netfix.guessing import is_edge
from netfix.states import State, all_states, encode, format_state, leq_i, parse_header, parse_state

DEFAULT_STATE_CAP = 2**20
DEFAULT_BRUTE_FORCE_CAP = 10**7


class Network:
    """A map ``[s]^n -> [s]^n``.

    Exactly one of ``table`` (``s**n`` output tuples in encoding order) and
    ``rule`` (a callable on state tuples) must be given.
    """

    def __init__(
        self,
        n: int,
        s: int,
        table: Optional[Sequence[Sequence[int]]] = None,
        rule: Optional[Callable[[tuple[int, ...]], tuple[int, ...]]] = None,
        provenance: str = "user",
    ):
        if (table is None) == (rule is None):
            raise InputError("give exactly one of table or rule")
        self.n = n
        self.s = s
        self.provenance = provenance
        self.rule = rule
        self.table: Optional[tuple[tuple[int, ...], ...]] = None
        if table is not None:
            if len(table) != s**n:
                raise InputError(f"table has {len(table)} rows, expected {s**n}")
            rows = tuple(tuple(int(c) for c in row) for row in table)
            for row in rows:
                if len(row) != n or any(not 0 <= c < s for c in row):
                    raise InputError(f"table row {row} is not a state of [{s}]^{n}")
            self.table = rows

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        if self.table is not None:
            return self.table[encode(x, self.s)]
        return tuple(self.rule(tuple(x)))

    def local(self, i: int, x: Sequence[int]) -> int:
        return self(x)[i]

    def tabulate(self, cap: int = DEFAULT_STATE_CAP) -> "Network":
        if self.table is not None:
            return self
        _check_cap(self.n, self.s, cap)
        table = [self(x) for x in all_states(self.n, self.s)]
        return Network(self.n, self.s, table=table, provenance=self.provenance)

    def to_text(self, cap: int = DEFAULT_STATE_CAP) -> str:
        rows = self.tabulate(cap).table
        lines = [f"network n={self.n} s={self.s}"]
        lines += [f"{k} -> {format_state(row)}" for k, row in enumerate(rows)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Network":
        return parse_network(text)


def parse_network(text: str) -> Network:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty network file")
    n, s = parse_header(lines[0], "network")
    rows: dict[int, tuple[int, ...]] = {}
    for ln in lines[1:]:
        left, sep, right = ln.partition("->")
        if not sep:
            raise InputError(f"bad network line {ln!r}; expected '<code> -> <state>'")
        try:
            code = int(left)
        except ValueError:
            raise InputError(f"bad input code {left.strip()!r}") from None
        if code in rows:
            raise InputError(f"input {code} listed twice")
        rows[code] = parse_state(right)
    if sorted(rows) != list(range(s**n)):
        raise InputError(f"network table must list every input 0..{s**n - 1} exactly once")
    return Network(n, s, table=[rows[k] for k in range(s**n)])


def _check_cap(n: int, s: int, cap: int) -> None:
    if s**n > cap:
        raise CapExceeded(f"{s}^{n} states exceed the cap of {cap}")


# -- membership and interaction graph ------------------------------------------


def is_in_F(D: SignedDigraph, f: Network, cap: int = DEFAULT_STATE_CAP) -> bool:
    """Whether ``G(f)`` is a subgraph of ``D``.

    Checked through unit steps: ``f_i`` must ignore coordinates outside
    ``N(i)`` and ``N^0(i)``-independent steps must respect the arc sign.
    Unit steps generate every ``<=_i`` relation, so this is equivalent to
    monotonicity of each ``f_i`` for ``<=_i``.
    """
    if f.n != D.n:
        raise InputError(f"network has {f.n} coordinates, digraph has {D.n} vertices")
    _check_cap(f.n, f.s, cap)
    n, s = f.n, f.s
    out = f.tabulate(cap).table
    for i in range(n):
        signs = {j: sg for j, sg in D.in_arcs(i)}
        for x in all_states(n, s):
            fx = out[encode(x, s)][i]
            for j in range(n):
                if x[j] == s - 1:
                    continue
                y = x[:j] + (x[j] + 1,) + x[j + 1 :]
                fy = out[encode(y, s)][i]
                sg = signs.get(j)
                if sg is None:
                    if fx != fy:
                        return False
                elif sg == Sign.POS and fx > fy:
                    return False
                elif sg == Sign.NEG and fx < fy:
                    return False
    return True


def interaction_graph(f: Network, cap: int = DEFAULT_STATE_CAP) -> SignedDigraph:
    _check_cap(f.n, f.s, cap)
    n, s = f.n, f.s
    out = f.tabulate(cap).table
    arcs = []
    for i in range(n):
        for j in range(n):
            up = down = False
            for x in all_states(n, s):
                if x[j] == s - 1:
                    continue
                a = out[encode(x, s)][i]
                b = out[encode(x[:j] + (x[j] + 1,) + x[j + 1 :], s)][i]
                up |= a < b
                down |= a > b
                if up and down:
                    break
            if up or down:
                arcs.append((j, i, Sign.ZERO if up and down else (Sign.POS if up else Sign.NEG)))
    return SignedDigraph(n, arcs)


# -- constructions --------------------------------------------------------------


def _as_states(Z: Iterable[Sequence[int]], n: int, s: int) -> list[tuple[int, ...]]:
    out = []
    for z in Z:
        z = tuple(z)
        if len(z) != n or any(not 0 <= c < s for c in z):
            raise InputError(f"{z} is not a state of [{s}]^{n}")
        out.append(z)
    return sorted(set(out))


def network_from_independent_set(D: SignedDigraph, s: int, Z: Iterable[Sequence[int]], cap: int = DEFAULT_STATE_CAP) -> Network:
    """A network on ``D`` fixing every state of the independent set ``Z``.

    ``f_i(x)`` is the least ``z_i`` over ``z`` in ``Z`` with ``x <=_i z``,
    falling back to the largest ``z_i`` over all of ``Z``.
    """
    n = D.n
    Z = _as_states(Z, n, s)
    if not Z:
        raise InputError("Z must be non-empty")
    _check_cap(n, s, cap)
    for a in range(len(Z)):
        for b in range(a + 1, len(Z)):
            if is_edge(D, s, Z[a], Z[b]):
                raise InputError(f"Z is not independent: {format_state(Z[a])} and {format_state(Z[b])} are adjacent")
    top = [max(z[i] for z in Z) for i in range(n)]
    table = []
    for x in all_states(n, s):
        row = []
        for i in range(n):
            vals = [z[i] for z in Z if leq_i(D, i, x, z)]
            row.append(min(vals) if vals else top[i])
        table.append(tuple(row))
    f = Network(n, s, table=table, provenance="synthesized-from-set")
    for z in Z:
        if f(z) != z:
            raise AssertionError(f"synthesized network moves {z}")
    if not is_in_F(D, f, cap):
        raise AssertionError("synthesized network is not on D")
    return f


def network_fixing_pair(D: SignedDigraph, s: int, x: Sequence[int], y: Sequence[int], cap: int = DEFAULT_STATE_CAP) -> Network:
    """A network on ``D`` fixing both ``x`` and ``y`` (which must be non-adjacent)."""
    n = D.n
    x, y = tuple(x), tuple(y)
    _as_states([x, y], n, s)
    if is_edge(D, s, x, y):
        raise InputError(f"{format_state(x)} and {format_state(y)} are adjacent in the guessing graph")
    _check_cap(n, s, cap)
    up = [x[i] < y[i] for i in range(n)]
    table = []
    for z in all_states(n, s):
        row = []
        for i in range(n):
            if up[i]:
                row.append(x[i] if leq_i(D, i, z, x) else y[i])
            else:
                row.append(y[i] if leq_i(D, i, z, y) else x[i])
        table.append(tuple(row))
    return Network(n, s, table=table, provenance="pair-fixing")


def saturation(a: int, s: int) -> int:
    return 0 if a < 0 else (s - 1 if a > s - 1 else a)


def kn_minus_network(n: int, s: int, w: int) -> Network:
    """Network on the negative clique whose fixed points are the weight-``w`` states."""
    if not 0 <= w <= n * (s - 1):
        raise InputError(f"weight {w} outside [0, {n * (s - 1)}]")

    def rule(x: tuple[int, ...]) -> tuple[int, ...]:
        total = sum(x)
        return tuple(saturation(w - (total - xi), s) for xi in x)

    return Network(n, s, rule=rule, provenance="kn-minus-saturation")


def kn_plus_network(C: Iterable[Sequence[int]], n: int, w: int) -> Network:
    """Binary network on the positive clique fixing ``C`` plus all-0 and all-1.

    ``C`` must be a constant-weight-``w`` code of minimum Hamming distance 4
    with ``3 <= w <= n - 3`` and ``2w != n``; every state then reaches a
    fixed point within three steps.
    """
    code = set(_as_states(C, n, 2))
    if not 3 <= w <= n - 3:
        raise InputError(f"need 3 <= w <= n - 3, got w = {w}, n = {n}")
    if 2 * w == n:
        raise InputError(f"need 2w != n, got w = {w}, n = {n}")
    if not code:
        raise InputError("code must be non-empty")
    if any(sum(c) != w for c in code):
        raise InputError(f"code is not of constant weight {w}")
    words = sorted(code)
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            if sum(p != q for p, q in zip(words[a], words[b])) < 4:
                raise InputError(f"minimum Hamming distance below 4: {format_state(words[a])}, {format_state(words[b])}")

    def local(i: int, x: tuple[int, ...]) -> int:
        one = x[:i] + (1,) + x[i + 1 :]
        zero = x[:i] + (0,) + x[i + 1 :]
        rest = sum(x) - x[i]
        if one in code or rest >= w + 1 or (rest == w and zero not in code):
            return 1
        return 0

    def rule(x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(local(i, x) for i in range(n))

    return Network(n, 2, rule=rule, provenance="kn-plus-threestep")


# -- dynamics -------------------------------------------------------------------


@dataclass
class FixReport:
    fixed_points: list[State]
    count: int
    is_independent_in_guessing_graph: Optional[bool] = None


def fixed_points(f: Network, D: Optional[SignedDigraph] = None, cap: int = DEFAULT_STATE_CAP) -> FixReport:
    """All fixed points in encoding order; with ``D`` given, also checks they
    are pairwise non-adjacent in ``G(D, s)``."""
    _check_cap(f.n, f.s, cap)
    fix = [State(x, f.s) for x in all_states(f.n, f.s) if f(x) == x]
    independent = None
    if D is not None:
        independent = not any(is_edge(D, f.s, a, b) for k, a in enumerate(fix) for b in fix[k + 1 :])
    return FixReport(fix, len(fix), independent)


def iterate(f: Network, x: Sequence[int], k: int) -> State:
    x = tuple(x)
    for _ in range(k):
        x = f(x)
    return State(x, f.s)


def trajectory(f: Network, x: Sequence[int], k: int) -> list[State]:
    out = [State(x, f.s)]
    for _ in range(k):
        out.append(State(f(out[-1]), f.s))
    return out


@dataclass
class Convergence:
    converges: bool
    max_steps: int
    counterexample: Optional[State] = None
    cycle: Optional[list[State]] = None

    def __bool__(self) -> bool:
        return self.converges


def converges_to(f: Network, S: Iterable[Sequence[int]], kmax: Optional[int] = None, cap: int = DEFAULT_STATE_CAP) -> Convergence:
    """Whether every state reaches ``S`` within ``kmax`` steps (default ``s**n``).

    ``max_steps`` is the largest number of steps any start needed. A
    trajectory that closes a cycle avoiding ``S`` is reported with that cycle.
    """
    _check_cap(f.n, f.s, cap)
    target = {tuple(x) for x in S}
    kmax = f.s**f.n if kmax is None else kmax
    worst = 0
    for x0 in all_states(f.n, f.s):
        x, seen, path = x0, {x0: 0}, [x0]
        steps = 0
        while x not in target:
            if steps == kmax:
                return Convergence(False, worst, State(x0, f.s))
            x = f(x)
            steps += 1
            if x in seen:
                cyc = [State(c, f.s) for c in path[seen[x] :]]
                if not target.intersection(path[seen[x] :]):
                    return Convergence(False, worst, State(x0, f.s), cyc)
            seen.setdefault(x, steps)
            path.append(x)
        worst = max(worst, steps)
    return Convergence(True, worst)


# -- brute force oracle --------------------------------------------------------------


def admissible_local_functions(D: SignedDigraph, s: int, i: int) -> list[dict[tuple[int, ...], int]]:
    """Every local function ``f_i`` allowed on ``D``, as maps from the values of
    the in-neighbours ``N(i)`` (in increasing vertex order) to ``[s]``."""
    inputs = [j for j, _ in D.in_arcs(i)]
    signs = [sg for _, sg in D.in_arcs(i)]
    points = list(product(range(s), repeat=len(inputs)))
    # in lexicographic order every unit-step predecessor is assigned first
    preds = []
    for p in points:
        row = []
        for k, sg in enumerate(signs):
            if p[k] > 0 and sg != Sign.ZERO:
                row.append((p[:k] + (p[k] - 1,) + p[k + 1 :], sg))
        preds.append(row)
    found: list[dict[tuple[int, ...], int]] = []
    values: dict[tuple[int, ...], int] = {}

    def assign(k: int) -> None:
        if k == len(points):
            found.append(dict(values))
            return
        p = points[k]
        lo, hi = 0, s - 1
        for q, sg in preds[k]:
            if sg == Sign.POS:
                lo = max(lo, values[q])
            else:
                hi = min(hi, values[q])
        for v in range(lo, hi + 1):
            values[p] = v
            assign(k + 1)
        values.pop(p, None)

    assign(0)
    return found


def brute_force_max_fixed_points(D: SignedDigraph, s: int, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> int:
    """Maximum ``|Fix(f)|`` over all networks on ``D``, by exhaustive enumeration.

    Each coordinate contributes the set of states where ``f_i(x) = x_i``;
    distinct such sets are combined by intersection.
    """
    n = D.n
    states = list(all_states(n, s))
    masks_per_vertex = []
    combos = 1
    for i in range(n):
        inputs = [j for j, _ in D.in_arcs(i)]
        masks = set()
        for fn in admissible_local_functions(D, s, i):
            m = 0
            for k, x in enumerate(states):
                if fn[tuple(x[j] for j in inputs)] == x[i]:
                    m |= 1 << k
            masks.add(m)
        masks_per_vertex.append(sorted(masks))
        combos *= len(masks)
        if combos > cap:
            raise CapExceeded(f"brute force would combine more than {cap} local function choices")
    best = 0

    def combine(i: int, acc: int) -> None:
        nonlocal best
        if bin(acc).count("1") <= best:
            return
        if i == n:
            best = bin(acc).count("1")
            return
        for m in masks_per_vertex[i]:
            combine(i + 1, acc & m)

    combine(0, (1 << len(states)) - 1)
    return best
