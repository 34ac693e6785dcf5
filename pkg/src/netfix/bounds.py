"""Closed-form and code-based bounds on the guessing number, and their asymptotic forms.

Binomial sums are exact integers; logarithms are taken last. Bounds that can
be negative are kept raw and clamped to ``[0, n]`` only when they are
combined into a :class:`BoundReport`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from netfix import codes
from netfix.digraph import INFINITE, SignedDigraph, c_plus as _c_plus, degree_stats, k_plus as _k_plus, nonneg_girth
from netfix.errors import CapExceeded, InputError
from netfix.states import DistanceKind

# exact code searches stay within seconds up to about 2^7 states (A_H(8,3,2) already stalls)
DEFAULT_ORACLE_CAP = 2**7


def entropy(p: float) -> float:
    """Binary entropy in bits, with ``H(0) = H(1) = 0``."""
    if not 0 <= p <= 1:
        raise InputError(f"entropy needs p in [0, 1], got {p}")
    if p == 0 or p == 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _log(value: float, base: int) -> float:
    return math.log2(value) / math.log2(base)


def _binom_sum(n: int, upto: int) -> int:
    return sum(math.comb(n, k) for k in range(0, min(upto, n) + 1))


# -- structural bounds --------------------------------------------------------------


def classic_bounds(D: SignedDigraph) -> tuple[int, int]:
    """``(c+, k+)``: disjoint non-negative cycles below, feedback set above."""
    return _c_plus(D), _k_plus(D)


def turan_lower(D: SignedDigraph) -> float:
    """``delta^0 + log2(4/3) delta^pm - log2 n`` (binary alphabet).

    Negative loops leave the guessing graph unchanged but would inflate the
    degrees, so they are dropped first.
    """
    st = degree_stats(D.without_negative_loops())
    return st.delta_zero + math.log2(4 / 3) * st.delta_pm - math.log2(D.n)


def typical_lower(D: SignedDigraph) -> Optional[float]:
    """``delta/2 - sqrt(ln(4n) delta / 2) - log2 n - 1``, or ``None`` when
    ``delta < ln(4n)/2`` (binary alphabet, negative loops dropped)."""
    n = D.n
    delta = degree_stats(D.without_negative_loops()).delta
    eps = math.log(4 * n) / 2
    if delta < eps:
        return None
    return delta / 2 - math.sqrt(eps * delta) - math.log2(n) - 1


def typical_lower_value(n: int, delta: int) -> Optional[float]:
    eps = math.log(4 * n) / 2
    if delta < eps:
        return None
    return delta / 2 - math.sqrt(eps * delta) - math.log2(n) - 1


# -- classical code bounds --------------------------------------------------------------


@dataclass(frozen=True)
class CodeBound:
    name: str
    quantity: str
    kind: str  # "lower" or "upper"
    value: Fraction

    @property
    def integer(self) -> int:
        """Best integer consequence: ceiling of a lower bound, floor of an upper one."""
        return math.ceil(self.value) if self.kind == "lower" else math.floor(self.value)


def gilbert(n: int, d: int) -> Fraction:
    return Fraction(2**n, _binom_sum(n, d - 1)) if d >= 1 else Fraction(2**n)


def sphere_packing(n: int, d: int) -> Fraction:
    return Fraction(2**n, _binom_sum(n, (d - 1) // 2)) if d >= 1 else Fraction(2**n)


def singleton(n: int, d: int, s: int) -> int:
    return s ** max(n - d + 1, 0)


def varshamov(n: int, d: int) -> Fraction:
    lo, hi = n // 2, (n + 1) // 2
    denom = sum(math.comb(lo, j) + math.comb(hi, j) for j in range(d))
    return Fraction(2 ** (n + 1), denom)


def classical_code_bounds(n: int, d: int, s: int = 2) -> list[CodeBound]:
    """Gilbert, sphere-packing, Singleton, Varshamov, Borden and Bassalygo-Elias
    at ``(n, d)``; all but Singleton are binary."""
    if n < 1 or d < 1:
        raise InputError(f"need n >= 1 and d >= 1, got n = {n}, d = {d}")
    out = [CodeBound("singleton", f"A_H({n},{d},{s})", "upper", Fraction(singleton(n, d, s)))]
    if s != 2:
        return out
    w = n // 2
    out += [
        CodeBound("gilbert", f"A_H({n},{d},2)", "lower", gilbert(n, d)),
        CodeBound("sphere_packing", f"A_H({n},{d},2)", "upper", sphere_packing(n, d)),
        CodeBound("varshamov", f"A_M({n},{d},2)", "upper", varshamov(n, d)),
        CodeBound("borden", f"A_M({n},{d},2)", "upper", d * sphere_packing(n, 2 * d - 1)),
        CodeBound("bassalygo_elias", f"A_H({n},{d},{w},2)", "lower", Fraction(math.comb(n, w), 2**n) * gilbert(n, d)),
    ]
    return out


# -- binomial estimates --------------------------------------------------------------


@dataclass(frozen=True)
class Bracket:
    lower: float
    exact: int
    upper: float

    @property
    def contains(self) -> bool:
        return self.lower <= self.exact <= self.upper


def binomial_estimates(n: int, lam: Fraction | float) -> Bracket:
    """Entropy bracket around ``C(n, lam n)`` for ``0 < lam < 1``."""
    k = _integral(n, lam)
    if not 0 < k < n:
        raise InputError(f"need 0 < lam n < n, got lam n = {k}")
    lam = k / n
    top = 2 ** (n * entropy(lam))
    return Bracket(
        top / math.sqrt(8 * n * lam * (1 - lam)),
        math.comb(n, k),
        top / math.sqrt(2 * math.pi * n * lam * (1 - lam)),
    )


def sum_binomial_estimates(n: int, mu: Fraction | float) -> Bracket:
    """Entropy bracket around ``sum_{k <= mu n} C(n, k)`` for ``0 < mu <= 1/2``."""
    k = _integral(n, mu)
    if not 0 < k or 2 * k > n:
        raise InputError(f"need 0 < mu n <= n/2, got mu n = {k}")
    mu = k / n
    top = 2 ** (n * entropy(mu))
    return Bracket(top / math.sqrt(8 * n * mu * (1 - mu)), _binom_sum(n, k), top)


def central_binomial_lower(n: int) -> Bracket:
    return Bracket(2 ** (n - 1) / math.sqrt(2 * n), math.comb(n, n // 2), math.inf)


def _integral(n: int, frac: Fraction | float) -> int:
    k = Fraction(frac).limit_denominator(10**6) * n
    if k.denominator != 1:
        raise InputError(f"{frac} * {n} is not an integer")
    return int(k)


# -- coding bounds on the guessing number ------------------------------------------------


def phi_raw(D: SignedDigraph) -> Fraction:
    """``max_i min{(n - d0_i + 1)/2, n - d0_i - d-_i + 1, n - d0_i - d+_i + 1}``."""
    n = D.n
    st = degree_stats(D)
    return max(
        min(Fraction(n - z + 1, 2), Fraction(n - z - m + 1), Fraction(n - z - p + 1))
        for p, m, z in zip(st.d_plus, st.d_minus, st.d_zero)
    )


def phi(D: SignedDigraph) -> int:
    """Smallest integer min-distance guaranteeing a fixable code (ceiling of :func:`phi_raw`)."""
    return math.ceil(phi_raw(D))


@dataclass
class CodingBound:
    value: float
    terms: dict[str, float]
    oracle: str


def _exact_ok(n: int, s: int, cap: int) -> bool:
    return s**n <= cap


def coding_upper(D: SignedDigraph, s: int, oracle: str = "auto", cap: int = DEFAULT_ORACLE_CAP) -> CodingBound:
    """``log_s`` of the largest code with the distance fixed-point sets must have.

    Every set of fixed points has Hamming distance ``>= gamma+``; on positive
    digraphs also Max-distance ``>= gamma+`` and on negative digraphs
    min-distance ``>= gamma+/2``. ``oracle`` is ``"exact"`` (search),
    ``"estimate"`` (Singleton, sphere-packing, Varshamov) or ``"auto"``.
    """
    n = D.n
    gamma = nonneg_girth(D)
    if gamma == INFINITE:
        return CodingBound(0.0, {"no non-negative cycle": 0.0}, "none")
    gamma = int(gamma)
    exact = oracle == "exact" or (oracle == "auto" and _exact_ok(n, s, cap))
    if oracle == "exact" and not _exact_ok(n, s, cap):
        raise CapExceeded(f"{s}^{n} states exceed the exact oracle cap of {cap}")
    terms: dict[str, float] = {}
    if exact:
        terms[f"A_H({n},{gamma},{s})"] = _log(codes.A(n, gamma, s, DistanceKind.HAMMING, cap), s)
        if D.is_positive() and D.arcs:
            terms[f"A_M({n},{gamma},{s})"] = _log(codes.A(n, gamma, s, DistanceKind.MAX, cap), s)
        if D.is_negative() and D.arcs:
            if gamma % 2:
                raise AssertionError("non-negative cycles of a negative digraph have even length")
            terms[f"A_m({n},{gamma // 2},{s})"] = _log(codes.A(n, gamma // 2, s, DistanceKind.MIN, cap), s)
    else:
        estimate = singleton(n, gamma, s)
        if s == 2:
            estimate = min(estimate, sphere_packing(n, gamma))
        terms[f"A_H({n},{gamma},{s}) estimate"] = _log(estimate, s)
        if s == 2 and D.is_positive() and D.arcs:
            terms[f"A_M({n},{gamma},2) Varshamov"] = math.log2(varshamov(n, gamma))
    return CodingBound(min(terms.values()), terms, "exact" if exact else "estimate")


def coding_lower(D: SignedDigraph, s: int, oracle: str = "auto", cap: int = DEFAULT_ORACLE_CAP) -> CodingBound:
    """``log_s A_m(n, phi, s)``: every code of min-distance ``>= phi`` is fixable.

    ``oracle``: ``"exact"`` searches ``A_m`` directly, ``"constant-weight"``
    (binary) uses the exact ``A_H(n, 2 phi, floor(n/2), 2)``, ``"estimate"``
    (binary) the Gilbert-type binomial form, ``"auto"`` the first that fits.
    """
    n = D.n
    ph = phi(D)
    if oracle == "auto":
        if _exact_ok(n, s, cap):
            oracle = "exact"
        elif s == 2 and math.comb(n, n // 2) <= cap:
            oracle = "constant-weight"
        else:
            oracle = "estimate"
    if oracle == "exact":
        if not _exact_ok(n, s, cap):
            raise CapExceeded(f"{s}^{n} states exceed the exact oracle cap of {cap}")
        value = _log(codes.A(n, ph, s, DistanceKind.MIN, cap), s)
        return CodingBound(value, {f"A_m({n},{ph},{s})": value}, oracle)
    if s != 2:
        return CodingBound(0.0, {"trivial": 0.0}, "trivial")
    if oracle == "constant-weight":
        value = math.log2(codes.A_constant_weight(n, 2 * ph, n // 2, cap))
        return CodingBound(value, {f"A_H({n},{2 * ph},{n // 2},2)": value}, oracle)
    value = gilbert_corollary_value(n, ph)[0]
    return CodingBound(value, {"Gilbert estimate": value}, "estimate")


def sphere_packing_upper(D: SignedDigraph) -> tuple[float, Optional[float]]:
    """Binary sphere-packing bound: exact binomial form, and the entropy form
    (``None`` when the radius is 0, where it degenerates)."""
    gamma = nonneg_girth(D)
    if gamma == INFINITE:
        return 0.0, 0.0
    return sphere_packing_value(D.n, int(gamma))


def sphere_packing_value(n: int, gamma: int) -> tuple[float, Optional[float]]:
    radius = (gamma - 1) // 2
    exact = n - math.log2(_binom_sum(n, radius))
    if radius == 0:
        return exact, None
    t = radius / n
    approx = n - n * entropy(t) + 0.5 * math.log2(n) + 0.5 * math.log2(8 * t * (1 - t))
    return exact, approx


def gilbert_corollary_lower(D: SignedDigraph) -> tuple[float, float]:
    """Binary lower bound from Bassalygo-Elias plus Gilbert, exact and entropy forms."""
    return gilbert_corollary_value(D.n, phi(D))


def gilbert_corollary_value(n: int, ph: int) -> tuple[float, float]:
    exact = math.log2(math.comb(n, n // 2)) - math.log2(_binom_sum(n, 2 * ph - 1))
    approx = n - n * entropy(min((2 * ph - 1) / n, 0.5)) - 0.5 * math.log2(n) - 1.5
    return exact, approx


# -- asymptotics ------------------------------------------------------------------------


def _h(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    p = 0.5 - 0.5 * np.sqrt(1.0 - x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -p * np.log2(p) - (1 - p) * np.log2(1 - p)
    return np.nan_to_num(out, nan=0.0)


def _mrrw_objective(u, dbar: float):
    u = np.asarray(u, dtype=float)
    return 1.0 + _h(u * u) - _h(u * u + 2 * dbar * u + 2 * dbar)


def mrrw(dbar: float, step: float = 1e-4, tol: float = 1e-9) -> float:
    """First linear-programming (MRRW) bound on the asymptotic rate of binary codes.

    Minimized over ``0 < u <= 1 - 2 dbar`` on a dense grid, then refined by
    ternary search around the best grid point.
    """
    if not 0 <= dbar <= 1:
        raise InputError(f"relative distance must lie in [0, 1], got {dbar}")
    ub = 1 - 2 * dbar
    if ub <= 0:
        return 0.0
    grid = np.append(np.arange(step, ub, step), ub)
    vals = _mrrw_objective(grid, dbar)
    k = int(np.argmin(vals))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    if k == 0:
        lo = min(grid[0], 1e-12)
    while hi - lo > tol:
        a = lo + (hi - lo) / 3
        b = hi - (hi - lo) / 3
        if _mrrw_objective(a, dbar) <= _mrrw_objective(b, dbar):
            hi = b
        else:
            lo = a
    best = min(float(vals[k]), float(_mrrw_objective((lo + hi) / 2, dbar)))
    return min(max(best, 0.0), 1.0)


def mrrw_threshold(kbar: float, tol: float = 1e-7) -> float:
    """Smallest relative girth ``gamma`` with ``MRRW(2 gamma) <= kbar``.

    Above it the code-based upper bound beats the feedback-set bound ``kbar``.
    """
    if kbar >= 1:
        return 0.0
    lo, hi = 0.0, 0.25
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mrrw(2 * mid) <= kbar:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass
class AsymptoticPoint:
    dbar: float
    lower_delta_half: float
    lower_gilbert: Optional[float]
    upper_mrrw: float
    upper_feedback_frontier: float


CSV_HEADER = ("dbar", "lower_delta_half", "lower_gilbert", "upper_mrrw", "upper_feedback_frontier")


def asymptotic_point(dbar: float) -> AsymptoticPoint:
    """Rate curves at one parameter value.

    ``dbar`` is read as the relative minimum in-degree for the two lower
    curves, and as the relative girth (``upper_mrrw`` = MRRW at twice it) or
    relative feedback number (``upper_feedback_frontier`` = 1 - dbar, the
    largest girth compatible with it) for the upper ones.
    """
    if not 0 <= dbar <= 1:
        raise InputError(f"grid value {dbar} outside [0, 1]")
    gil = 1 - entropy(2 * (1 - dbar)) if dbar >= 0.75 else None
    return AsymptoticPoint(dbar, dbar / 2, gil, mrrw(min(2 * dbar, 1.0)), 1 - dbar)


def asymptotic_curves(grid: Iterable[float]) -> list[AsymptoticPoint]:
    return [asymptotic_point(x) for x in grid]


def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` inclusive of ``stop``."""
    try:
        start, stop, step = (float(t) for t in spec.split(":"))
    except ValueError:
        raise InputError(f"bad grid {spec!r}; expected start:stop:step") from None
    if step <= 0 or stop < start:
        raise InputError(f"bad grid {spec!r}")
    count = int(round((stop - start) / step))
    return [round(start + k * step, 10) for k in range(count + 1)]


def curves_csv(points: Sequence[AsymptoticPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in points:
        writer.writerow(
            [
                f"{p.dbar:.6f}",
                f"{p.lower_delta_half:.6f}",
                "" if p.lower_gilbert is None else f"{p.lower_gilbert:.6f}",
                f"{p.upper_mrrw:.6f}",
                f"{p.upper_feedback_frontier:.6f}",
            ]
        )
    return buf.getvalue()


def frontier_csv(grid: Sequence[float]) -> str:
    """Relative girth window where the MRRW bound beats the feedback bound."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("kbar", "gamma_threshold", "gamma_max"))
    for k in grid:
        writer.writerow([f"{k:.6f}", f"{mrrw_threshold(k):.6f}", f"{1 - k:.6f}"])
    return buf.getvalue()


# -- combined report --------------------------------------------------------------------


@dataclass
class BoundEntry:
    name: str
    kind: str
    value: Optional[float]
    applicable: bool
    source: str

    def clamped(self, n: int) -> Optional[float]:
        if not self.applicable or self.value is None:
            return None
        return min(max(self.value, 0.0), float(n))


@dataclass
class BoundReport:
    n: int
    s: int
    entries: list[BoundEntry] = field(default_factory=list)
    alpha: Optional[int] = None

    def add(self, name: str, kind: str, value: Optional[float], source: str, applicable: bool = True) -> None:
        self.entries.append(BoundEntry(name, kind, value, applicable and value is not None, source))

    def _values(self, kind: str) -> list[float]:
        return [v for e in self.entries if e.kind == kind and (v := e.clamped(self.n)) is not None]

    @property
    def certified_lower(self) -> float:
        return max(self._values("lower"), default=0.0)

    @property
    def certified_upper(self) -> float:
        return min(self._values("upper"), default=float(self.n))

    @property
    def g(self) -> Optional[float]:
        if self.alpha is None:
            return None
        return _log(self.alpha, self.s) if self.alpha > 1 else 0.0

    def violations(self, slack: float = 1e-9) -> list[str]:
        """Bounds contradicted by the exact ``alpha`` (empty when none was computed)."""
        g = self.g
        if g is None:
            return []
        out = []
        for e in self.entries:
            v = e.clamped(self.n)
            if v is None:
                continue
            if e.kind == "lower" and v > g + slack:
                out.append(f"{e.name} = {v:.6f} > g = {g:.6f}")
            if e.kind == "upper" and v < g - slack:
                out.append(f"{e.name} = {v:.6f} < g = {g:.6f}")
        return out

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            value = "NA" if e.value is None else f"{e.value:.6f}"
            out.append(f"{e.name} {e.kind} {value} {'yes' if e.applicable else 'no'} {e.source}")
        return out


def bound_report(
    D: SignedDigraph,
    s: int,
    oracle: str = "auto",
    cap: int = DEFAULT_ORACLE_CAP,
    alpha: Optional[int] = None,
) -> BoundReport:
    """Every applicable bound on ``g(D, s)`` and the certified interval they give."""
    n = D.n
    rep = BoundReport(n, s, alpha=alpha)
    cp, kp = classic_bounds(D)
    rep.add("c_plus", "lower", float(cp), "disjoint non-negative cycles")
    rep.add("k_plus", "upper", float(kp), "non-negative feedback vertex set")
    binary = s == 2
    rep.add("turan", "lower", turan_lower(D) if binary else None, "average-degree independence bound", binary)
    typ = typical_lower(D) if binary else None
    rep.add("typical_set", "lower", typ, "typical-state degree bound", binary and typ is not None)

    try:
        up = coding_upper(D, s, oracle if oracle != "constant-weight" else "auto", cap)
        for label, value in up.terms.items():
            rep.add(f"coding_upper[{label}]", "upper", value, f"fixed points form a code ({up.oracle})")
    except CapExceeded:
        rep.add("coding_upper", "upper", None, "exact oracle over cap", False)
    if binary:
        exact, approx = sphere_packing_upper(D)
        rep.add("sphere_packing", "upper", exact, "sphere-packing, binomial form")
        rep.add("sphere_packing_entropy", "upper", approx, "sphere-packing, entropy form", approx is not None)

    try:
        low = coding_lower(D, s, oracle if oracle != "estimate" or binary else "auto", cap)
        for label, value in low.terms.items():
            rep.add(f"coding_lower[{label}]", "lower", value, f"min-distance codes are fixable ({low.oracle})")
    except CapExceeded:
        rep.add("coding_lower", "lower", None, "exact oracle over cap", False)
    if binary:
        exact, approx = gilbert_corollary_lower(D)
        rep.add("gilbert_corollary", "lower", exact, "Bassalygo-Elias with Gilbert, binomial form")
        rep.add("gilbert_corollary_entropy", "lower", approx, "Bassalygo-Elias with Gilbert, entropy form")
    return rep
