"""The fourteen reproduction checks run by ``netfix verify-paper``.

Each check returns a :class:`CriterionResult`; a check passes only when its
property holds and it finished inside its time budget. Random sweeps use
fixed seeds so reruns are identical.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Optional

from netfix import codes
from netfix.bounds import bound_report, curves_csv, asymptotic_curves, entropy, mrrw, parse_grid
from netfix.digraph import INFINITE, Sign, SignedDigraph, nonneg_girth
from netfix.guessing import GuessingResult, build_guessing_graph, degree_by_formula, guessing_number
from netfix.states import DistanceKind, all_states, distance
from netfix.synthesis import (
    Network,
    admissible_local_functions,
    brute_force_max_fixed_points,
    converges_to,
    fixed_points,
    is_in_F,
    kn_minus_network,
    kn_plus_network,
    network_from_independent_set,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s / {self.limit:g}s)"


_SIGNS = (Sign.NEG, Sign.ZERO, Sign.POS)


def random_digraph(rng: random.Random, n: int, p: float = 0.4, loops: bool = True) -> SignedDigraph:
    arcs = []
    for u, v in product(range(n), repeat=2):
        if (u != v or loops) and rng.random() < p:
            arcs.append((u, v, rng.choice(_SIGNS)))
    return SignedDigraph(n, arcs)


# Witnesses from criteria 1-3, reused by the synthesis round trip.
_WITNESSES: list[tuple[SignedDigraph, int, GuessingResult]] = []


def _solve(D: SignedDigraph, s: int) -> GuessingResult:
    res = guessing_number(D, s)
    _WITNESSES.append((D, s, res))
    return res


def criterion_1() -> tuple[bool, str]:
    bad, worst = [], 0.0
    for n in (2, 3, 4, 5):
        for s in (2, 3):
            t = time.perf_counter()
            res = _solve(SignedDigraph.cycle(n, Sign.POS), s)
            worst = max(worst, time.perf_counter() - t)
            if res.alpha != s or res.g_integer != 1 or worst >= 5:
                bad.append(f"C_{n}^+ s={s}: alpha={res.alpha}")
    return not bad, "; ".join(bad) or f"alpha = s for all 8 cases, slowest {worst:.2f}s"


def criterion_2() -> tuple[bool, str]:
    cases = [(n, 2, math.comb(n, n // 2)) for n in (2, 3, 4)] + [(2, 3, 3)]
    got = [(n, s, _solve(SignedDigraph.clique(n, Sign.NEG), s).alpha, want) for n, s, want in cases]
    bad = [f"K_{n}^- s={s}: {a} != {w}" for n, s, a, w in got if a != w]
    return not bad, "; ".join(bad) or "alphas " + ", ".join(str(a) for _, _, a, _ in got)


def criterion_3() -> tuple[bool, str]:
    bad, vals = [], []
    for s in (2, 3, 4):
        res = _solve(SignedDigraph.clique(3, Sign.POS), s)
        vals.append(res.alpha)
        if res.alpha != 3 * (s - 1) // 2 + 1:
            bad.append(f"s={s}: alpha={res.alpha}")
        if s == 3 and not res.g > 1:
            bad.append(f"g(K_3^+,3) = {res.g} not above 1")
    return not bad, "; ".join(bad) or f"alphas {vals}, g(K_3^+,3) = log_3 4"


def criterion_4() -> tuple[bool, str]:
    rng = random.Random(4)
    tested, bad = 0, []
    while tested < 120:
        n = rng.randint(1, 5)
        D = random_digraph(rng, n, rng.uniform(0.1, 0.6))
        if nonneg_girth(D) != INFINITE:
            continue
        tested += 1
        if not build_guessing_graph(D, 2).is_complete():
            bad.append(D.to_text().replace("\n", " | "))
    return not bad, f"{tested} digraphs without non-negative cycles, {len(bad)} incomplete graphs"


def _all_digraphs(n: int):
    pairs = list(product(range(n), repeat=2))
    for choice in product((None,) + _SIGNS, repeat=len(pairs)):
        yield SignedDigraph(n, [(u, v, sg) for (u, v), sg in zip(pairs, choice) if sg is not None])


def criterion_5() -> tuple[bool, str]:
    cases = list(_all_digraphs(2))
    cases += [SignedDigraph.clique(3, Sign.POS), SignedDigraph.clique(3, Sign.NEG), SignedDigraph.cycle(3, Sign.POS)]
    bad = [D for D in cases if brute_force_max_fixed_points(D, 2) != guessing_number(D, 2).alpha]
    return not bad, f"{len(cases)} digraphs, {len(bad)} mismatches"


def criterion_6() -> tuple[bool, str]:
    if not _WITNESSES:
        for n in (2, 3, 4, 5):
            for s in (2, 3):
                _solve(SignedDigraph.cycle(n, Sign.POS), s)
        for n, s in ((2, 2), (3, 2), (4, 2), (2, 3)):
            _solve(SignedDigraph.clique(n, Sign.NEG), s)
        for s in (2, 3, 4):
            _solve(SignedDigraph.clique(3, Sign.POS), s)
    bad = []
    for D, s, res in _WITNESSES:
        f = network_from_independent_set(D, s, res.witness)
        if not is_in_F(D, f) or any(f(x) != tuple(x) for x in res.witness):
            bad.append(f"{D!r} s={s}")
    return not bad, f"{len(_WITNESSES)} witnesses, {len(bad)} failures"


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(7)
    mismatches = 0
    for _ in range(500):
        n = rng.randint(1, 4)
        D = random_digraph(rng, n, rng.uniform(0.2, 0.8), loops=False)
        G = build_guessing_graph(D, 2)
        for x in all_states(n, 2):
            if degree_by_formula(D, x) != G.degree(x):
                mismatches += 1
    return mismatches == 0, f"500 loopless digraphs, {mismatches} mismatches"


def random_network(rng: random.Random, D: SignedDigraph, s: int, cache: dict) -> Network:
    local = []
    for i in range(D.n):
        key = (D, s, i)
        if key not in cache:
            cache[key] = admissible_local_functions(D, s, i)
        local.append(rng.choice(cache[key]))
    inputs = [[j for j, _ in D.in_arcs(i)] for i in range(D.n)]
    table = [
        tuple(local[i][tuple(x[j] for j in inputs[i])] for i in range(D.n)) for x in all_states(D.n, s)
    ]
    return Network(D.n, s, table=table, provenance="random")


def criterion_8() -> tuple[bool, str]:
    rng = random.Random(8)
    cache: dict = {}
    violations = 0
    samples = 10_000
    for _ in range(samples):
        n = rng.randint(1, 3)
        D = random_digraph(rng, n, rng.uniform(0.2, 0.8))
        gamma = nonneg_girth(D)
        fix = fixed_points(random_network(rng, D, 2, cache)).fixed_points
        for a, b in combinations(fix, 2):
            if distance(a, b, DistanceKind.HAMMING) < gamma:
                violations += 1
            if D.arcs and D.is_positive() and distance(a, b, DistanceKind.MAX) < gamma:
                violations += 1
            if D.arcs and D.is_negative() and distance(a, b, DistanceKind.MIN) < gamma / 2:
                violations += 1
    return violations == 0, f"{samples} sampled networks, {violations} violations"


def criterion_9() -> tuple[bool, str]:
    C = codes.max_constant_weight_code(7, 4, 3)
    if len(C) != 7:
        return False, f"constant-weight search found {len(C)} words, expected 7"
    f = kn_plus_network(list(C.codewords), 7, 3)
    target = set(C.codewords) | {(0,) * 7, (1,) * 7}
    conv = converges_to(f, target, kmax=3)
    fix = {tuple(x) for x in fixed_points(f).fixed_points}
    ok = conv.converges and fix == target
    return ok, f"converges={conv.converges}, max steps {conv.max_steps}, |Fix|={len(fix)}"


def criterion_10() -> tuple[bool, str]:
    f = kn_minus_network(3, 2, 1).tabulate()
    fix = {tuple(x) for x in fixed_points(f).fixed_points}
    level = set(codes.level(3, 1, 2))
    swap = f((0, 0, 0)) == (1, 1, 1) and f((1, 1, 1)) == (0, 0, 0)
    conv = converges_to(f, level)
    ok = fix == level and swap and not conv.converges
    return ok, f"Fix = B(3,1,2): {fix == level}, 000<->111 cycle: {swap}, converges: {conv.converges}"


def criterion_11() -> tuple[bool, str]:
    bad = []
    for n in range(1, 7):
        for s in (2, 3):
            for m, fiber in codes.moment_fibers(n, s).items():
                for a, b in combinations(fiber, 2):
                    if distance(a, b, DistanceKind.MIN) < 2:
                        bad.append(f"n={n} s={s} m={m}")
                        break
            _, best = codes.best_moment_code(n, s)
            if len(best) < codes.moment_counting_bound(n, s):
                bad.append(f"n={n} s={s}: best fiber {len(best)} below counting bound")
    return not bad, "; ".join(bad[:3]) or "all fibers have min-distance >= 2; best fibers meet the counting bound"


def criterion_12() -> tuple[bool, str]:
    checked, bad = 0, []
    for n in range(1, 6):
        for d in range(1, (n + 1) // 2 + 1):
            chain = codes.check_distance_chain(n, d)
            checked += 1
            if not chain.holds:
                bad.append(f"n={n} d={d}: {', '.join(chain.failures)}")
    return not bad, "; ".join(bad) or f"{checked} (n, d) pairs"


def _canonical(code: tuple[int, ...], n: int) -> tuple[int, ...]:
    best = code
    for perm in permutations(range(n)):
        relabelled = [0] * (n * n)
        for u in range(n):
            for v in range(n):
                relabelled[perm[u] * n + perm[v]] = code[u * n + v]
        best = min(best, tuple(relabelled))
    return best


def criterion_13() -> tuple[bool, str]:
    n = 3
    classes = violations = 0
    example = ""
    for code in product(range(4), repeat=n * n):
        if _canonical(code, n) != code:
            continue
        classes += 1
        arcs = [(k // n, k % n, _SIGNS[c - 1]) for k, c in enumerate(code) if c]
        D = SignedDigraph(n, arcs)
        rep = bound_report(D, 2, alpha=guessing_number(D, 2).alpha)
        found = rep.violations()
        if found:
            violations += len(found)
            example = example or f"{D!r}: {found[0]}"
    detail = f"{4 ** 9} digraphs in {classes} isomorphism classes, {violations} violations"
    return violations == 0, detail + (f"; e.g. {example}" if example else "")


def criterion_14() -> tuple[bool, str]:
    bad = []
    for k in range(50, 101):
        if abs(mrrw(k / 100)) > 1e-6:
            bad.append(f"mrrw({k / 100}) != 0")
    if abs(mrrw(0.0) - 1) > 1e-6:
        bad.append(f"mrrw(0) = {mrrw(0.0)}")
    if not 1 - entropy(2 * (1 - 0.95)) >= 0.95 / 2:
        bad.append("second lower curve does not dominate at 0.95")
    if not 1 - entropy(2 * (1 - 0.76)) <= 0.76 / 2:
        bad.append("first lower curve does not dominate at 0.76")
    points = asymptotic_curves(parse_grid("0:1:0.01"))
    csv_text = curves_csv(points)
    if not csv_text.startswith("dbar,lower_delta_half,lower_gilbert,upper_mrrw,upper_feedback_frontier\n"):
        bad.append("wrong CSV header")
    if any((p.lower_gilbert is None) != (p.dbar < 0.75) for p in points):
        bad.append("Gilbert curve domain is not [3/4, 1]")
    if any(p.dbar >= 0.25 and p.upper_mrrw > 1e-6 for p in points):
        bad.append("MRRW(2 gamma) nonzero for gamma >= 1/4")
    mr = [p.upper_mrrw for p in points]
    if any(b > a + 1e-9 for a, b in zip(mr, mr[1:])):
        bad.append("MRRW curve not non-increasing")
    return not bad, "; ".join(bad) or f"{len(points)} grid points, crossover in (0.76, 0.95)"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]], float]] = [
    (1, "cycle guessing numbers", criterion_1, 40),
    (2, "negative cliques", criterion_2, 10),
    (3, "positive triangle anomaly", criterion_3, 10),
    (4, "completeness without non-negative cycles", criterion_4, 30),
    (5, "brute-force oracle equivalence", criterion_5, 300),
    (6, "synthesis round trip", criterion_6, 10),
    (7, "degree formula", criterion_7, 60),
    (8, "fixed points form codes", criterion_8, 120),
    (9, "three-step convergence on K_7^+", criterion_9, 5),
    (10, "non-convergence on K_3^-", criterion_10, 1),
    (11, "moment codes", criterion_11, 120),
    (12, "distance chain", criterion_12, 120),
    (13, "bound soundness sweep", criterion_13, 600),
    (14, "asymptotic curves", criterion_14, 10),
]


def run_criterion(number: int) -> CriterionResult:
    num, name, fn, limit = CRITERIA[number - 1]
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - t
    if seconds > limit:
        ok, detail = False, f"{detail}; over time budget"
    return CriterionResult(num, name, ok, detail, seconds, limit)


def run_all(only: Optional[list[int]] = None) -> list[CriterionResult]:
    _WITNESSES.clear()
    return [run_criterion(num) for num, *_ in CRITERIA if only is None or num in only]
