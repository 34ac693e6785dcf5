"""The ``netfix`` command line.

Exit status: 0 on success, 2 on bad input, 3 when a size cap is exceeded.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from netfix import acceptance, bounds, codes
from netfix.digraph import INFINITE, SignedDigraph, degree_stats, max_disjoint_nonneg_cycles, min_nonneg_fvs, nonneg_girth, parse_digraph
from netfix.errors import CapExceeded, InputError
from netfix.guessing import DEFAULT_SOLVER_CAP, GuessingResult, build_guessing_graph, alpha as solve_alpha
from netfix.states import DistanceKind, State, format_state, parse_state
from netfix.synthesis import converges_to, fixed_points, network_from_independent_set, parse_network, trajectory


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_digraph(path: str) -> SignedDigraph:
    return parse_digraph(_read(path))


def _real(x: float) -> str:
    return f"{x:.6f}"


def _g_text(res: GuessingResult) -> str:
    k = res.g_integer
    return str(k) if k is not None else _real(res.g)


def _state_arg(text: str, n: int, s: int) -> State:
    x = parse_state(text)
    if len(x) != n:
        raise InputError(f"state {text} has {len(x)} coordinates, expected {n}")
    return State(x, s)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc}") from None
    print(f"wrote {out}", file=sys.stderr)


# -- subcommands ---------------------------------------------------------------------


def cmd_graph_info(args) -> None:
    D = _load_digraph(args.digraph)
    st = degree_stats(D)
    gamma = nonneg_girth(D)
    fvs = min_nonneg_fvs(D, args.vertex_cap)
    cycles = max_disjoint_nonneg_cycles(D, args.vertex_cap)
    lines = [
        f"vertices = {D.n}",
        f"arcs = {len(D.arcs)}",
        f"loops = {len(D.loops())}",
        f"positive = {'yes' if D.arcs and D.is_positive() else 'no'}",
        f"negative = {'yes' if D.arcs and D.is_negative() else 'no'}",
        f"unate = {'yes' if D.is_unate() else 'no'}",
        f"gamma_plus = {'inf' if gamma == INFINITE else int(gamma)}",
        f"k_plus = {len(fvs)}",
        f"c_plus = {len(cycles)}",
        f"min_in_degree = {st.delta}",
        f"max_in_degree = {st.Delta}",
        f"mean_in_degree = {_real(st.mean)}",
        f"feedback_set = {' '.join(map(str, fvs))}",
    ]
    lines += [f"cycle = {' '.join(map(str, c))}" for c in cycles]
    print("\n".join(lines))


def _alpha(args) -> tuple[SignedDigraph, GuessingResult]:
    D = _load_digraph(args.digraph)
    G = build_guessing_graph(D, args.alphabet, materialize=args.materialize or args.alphabet**D.n <= args.cap)
    return D, solve_alpha(G, args.cap)


def cmd_alpha(args) -> None:
    _, res = _alpha(args)
    print(f"alpha = {res.alpha}")
    print(f"g = {_g_text(res)}")
    for x in res.witness:
        print(format_state(x))


def cmd_guess(args) -> None:
    D, res = _alpha(args)
    print(f"alpha = {res.alpha}")
    print(f"g = {_g_text(res)}")
    f = network_from_independent_set(D, args.alphabet, res.witness)
    print(f"fixed_points = {fixed_points(f).count}")


def cmd_bounds(args) -> None:
    D = _load_digraph(args.digraph)
    oracle = "exact" if args.exact_oracle else "auto"
    alpha = None
    if args.check_alpha:
        alpha = solve_alpha(build_guessing_graph(D, args.alphabet), args.cap).alpha
    rep = bounds.bound_report(D, args.alphabet, oracle=oracle, cap=args.oracle_cap, alpha=alpha)
    if args.out:
        rows = ["name,kind,value,applicable,source"]
        for e in rep.entries:
            value = "" if e.value is None else _real(e.value)
            rows.append(f'{e.name},{e.kind},{value},{"yes" if e.applicable else "no"},"{e.source}"')
        _emit("\n".join(rows) + "\n", args.out)
    else:
        print("\n".join(rep.lines()))
    print(f"certified = [{_real(rep.certified_lower)}, {_real(rep.certified_upper)}]")
    if alpha is not None:
        print(f"g = {_real(rep.g)}")
        broken = rep.violations()
        for msg in broken:
            print(f"violation: {msg}", file=sys.stderr)
        if broken:
            raise SystemExit(1)


def cmd_synthesize(args) -> None:
    D = _load_digraph(args.digraph)
    if args.states:
        C = codes.parse_code(_read(args.states))
        if C.n != D.n or C.s != args.alphabet:
            raise InputError(f"code is over [{C.s}]^{C.n}, digraph needs [{args.alphabet}]^{D.n}")
        Z = list(C)
    else:
        Z = solve_alpha(build_guessing_graph(D, args.alphabet), args.cap).witness
    f = network_from_independent_set(D, args.alphabet, Z)
    _emit(f.to_text(), args.out)


def cmd_simulate(args) -> None:
    f = parse_network(_read(args.network))
    x = _state_arg(args.start, f.n, f.s)
    if args.steps < 0:
        raise InputError("--steps must be non-negative")
    for k, y in enumerate(trajectory(f, x, args.steps)):
        print(f"{k} {format_state(y)}")


def cmd_converge(args) -> None:
    f = parse_network(_read(args.network))
    C = codes.parse_code(_read(args.target))
    if (C.n, C.s) != (f.n, f.s):
        raise InputError(f"target is over [{C.s}]^{C.n}, network over [{f.s}]^{f.n}")
    res = converges_to(f, C.codewords, args.kmax)
    print(f"converges = {'yes' if res.converges else 'no'}")
    print(f"max_steps = {res.max_steps}")
    if res.counterexample is not None:
        print(f"counterexample = {format_state(res.counterexample)}")
    if res.cycle:
        print("cycle = " + " -> ".join(format_state(c) for c in res.cycle))


def _print_code(C: codes.Code, out: Optional[str]) -> None:
    _emit(C.to_text(), out)
    print(f"size = {len(C)}", file=sys.stderr if out is None else sys.stdout)


def cmd_codes(args) -> None:
    if args.kind == "max":
        kind = DistanceKind(args.distance)
        if args.weight is not None:
            if args.alphabet != 2 or kind is not DistanceKind.HAMMING:
                raise InputError("--weight needs --alphabet 2 and --distance hamming")
            C = codes.max_constant_weight_code(args.n, args.d, args.weight, args.cap)
        else:
            C = codes.max_code(args.n, args.d, args.alphabet, kind, args.cap)
        _print_code(C, args.out)
    elif args.kind == "moment":
        if args.m:
            m = parse_state(args.m)
            C = codes.moment_code(args.n, args.alphabet, m)
        else:
            m, C = codes.best_moment_code(args.n, args.alphabet)
        print(f"m = {format_state(m)}", file=sys.stderr)
        _print_code(C, args.out)
    elif args.kind == "sperner":
        _print_code(codes.sperner_antichain(args.n, args.alphabet), args.out)
    else:
        chain = codes.chain_code_k3(args.alphabet)
        _print_code(codes.Code.of(chain, 3, args.alphabet), args.out)


def cmd_asymptotics(args) -> None:
    grid = bounds.parse_grid(args.grid)
    _emit(bounds.curves_csv(bounds.asymptotic_curves(grid)), args.out)
    if args.frontier_out:
        _emit(bounds.frontier_csv(grid), args.frontier_out)


def cmd_verify(args) -> None:
    only = None
    if args.only:
        try:
            only = [int(t) for t in args.only.split(",")]
        except ValueError:
            raise InputError(f"bad --only list {args.only!r}") from None
        if any(not 1 <= k <= len(acceptance.CRITERIA) for k in only):
            raise InputError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    results = []
    for num, *_ in acceptance.CRITERIA:
        if only is None or num in only:
            res = acceptance.run_criterion(num)
            print(res.line(), flush=True)
            results.append(res)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    if passed != len(results):
        raise SystemExit(1)


# -- parser ------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _alphabet(text: str) -> int:
    v = _positive(text)
    if v < 2:
        raise argparse.ArgumentTypeError("alphabet size must be at least 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="netfix", description="Guessing numbers and fixed points of signed digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("graph-info", help="structural parameters of a digraph")
    q.add_argument("digraph")
    q.add_argument("--vertex-cap", type=_positive, default=20)
    q.set_defaults(func=cmd_graph_info)

    for name, func, text in (
        ("alpha", cmd_alpha, "exact independence number of the guessing graph"),
        ("guess", cmd_guess, "guessing number with a network attaining it"),
    ):
        q = sub.add_parser(name, help=text)
        q.add_argument("digraph")
        q.add_argument("--alphabet", "-s", type=_alphabet, default=2)
        q.add_argument("--materialize", action="store_true", help="build the adjacency even above the cap")
        q.add_argument("--cap", type=_positive, default=DEFAULT_SOLVER_CAP)
        q.set_defaults(func=func)

    q = sub.add_parser("bounds", help="every applicable bound and the certified interval")
    q.add_argument("digraph")
    q.add_argument("--alphabet", "-s", type=_alphabet, default=2)
    q.add_argument("--exact-oracle", action="store_true", help="require exact code searches")
    q.add_argument("--oracle-cap", type=_positive, default=bounds.DEFAULT_ORACLE_CAP)
    q.add_argument("--check-alpha", action="store_true", help="also compute alpha and check containment")
    q.add_argument("--cap", type=_positive, default=DEFAULT_SOLVER_CAP)
    q.add_argument("--out")
    q.set_defaults(func=cmd_bounds)

    q = sub.add_parser("synthesize", help="network in F(D,s) fixing a maximum or given independent set")
    q.add_argument("digraph")
    q.add_argument("--alphabet", "-s", type=_alphabet, default=2)
    q.add_argument("--states", help="code file with the states to fix")
    q.add_argument("--cap", type=_positive, default=DEFAULT_SOLVER_CAP)
    q.add_argument("--out")
    q.set_defaults(func=cmd_synthesize)

    q = sub.add_parser("simulate", help="iterate a network from a start state")
    q.add_argument("network")
    q.add_argument("--start", required=True)
    q.add_argument("--steps", type=int, default=10)
    q.set_defaults(func=cmd_simulate)

    q = sub.add_parser("converge", help="check convergence of every state to a target set")
    q.add_argument("network")
    q.add_argument("--target", required=True)
    q.add_argument("--kmax", type=_positive)
    q.set_defaults(func=cmd_converge)

    q = sub.add_parser("codes", help="code constructions and exact searches")
    csub = q.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("max", help="largest code with a given minimum distance")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--alphabet", "-s", type=_alphabet, default=2)
    c.add_argument("--distance", choices=[k.value for k in DistanceKind], default="hamming")
    c.add_argument("--weight", type=int, help="restrict to binary words of this weight")
    c.add_argument("--cap", type=_positive, default=codes.DEFAULT_CODE_CAP)
    c.add_argument("--out")
    c = csub.add_parser("moment", help="weight-moment code (largest fiber unless --m is given)")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--alphabet", "-s", type=_alphabet, default=2)
    c.add_argument("--m", help="moment vector m0,m1,m2")
    c.add_argument("--out")
    c = csub.add_parser("sperner", help="middle level of [s]^n")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--alphabet", "-s", type=_alphabet, default=2)
    c.add_argument("--out")
    c = csub.add_parser("chain-k3", help="chain code for the positive triangle")
    c.add_argument("--alphabet", "-s", type=_alphabet, default=2)
    c.add_argument("--out")
    q.set_defaults(func=cmd_codes)

    q = sub.add_parser("asymptotics", help="asymptotic rate curves as CSV")
    q.add_argument("--grid", default="0:1:0.01", help="start:stop:step, stop included")
    q.add_argument("--out")
    q.add_argument("--frontier-out", help="also write the girth window where MRRW beats k+")
    q.set_defaults(func=cmd_asymptotics)

    q = sub.add_parser("verify-paper", help="run the acceptance checks")
    q.add_argument("--only", help="comma-separated criterion numbers")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"netfix: error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"netfix: cap exceeded: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
