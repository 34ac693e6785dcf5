import random
from itertools import combinations, product

import pytest

from conftest import random_digraph
from netfix import codes
from netfix.digraph import Sign, SignedDigraph, is_subgraph, nonneg_girth
from netfix.errors import CapExceeded, InputError
from netfix.guessing import build_guessing_graph, guessing_number, is_edge
from netfix.states import DistanceKind, all_states, distance, leq_i
from netfix.synthesis import (
    Network,
    admissible_local_functions,
    brute_force_max_fixed_points,
    converges_to,
    fixed_points,
    interaction_graph,
    is_in_F,
    iterate,
    kn_minus_network,
    kn_plus_network,
    network_fixing_pair,
    network_from_independent_set,
    parse_network,
    trajectory,
)


def identity(n, s):
    return Network(n, s, rule=lambda x: x)


def test_network_text_roundtrip():
    f = kn_minus_network(3, 2, 1)
    g = parse_network(f.to_text())
    assert g.table == f.tabulate().table
    assert f.to_text().splitlines()[0] == "network n=3 s=2"


@pytest.mark.parametrize(
    "text",
    [
        "network n=1 s=2\n0 -> 0\n",
        "network n=1 s=2\n0 -> 0\n0 -> 1\n",
        "network n=1 s=2\n0 -> 0\n1 -> 2\n",
        "network n=1 s=2\n0 0\n1 -> 1\n",
        "",
    ],
)
def test_network_parse_errors(text):
    with pytest.raises(InputError):
        parse_network(text)


def test_interaction_graph_of_known_networks():
    f = Network(2, 2, rule=lambda x: (x[1], 1 - x[0]))
    G = interaction_graph(f)
    assert G.sign(1, 0) == Sign.POS and G.sign(0, 1) == Sign.NEG and len(G.arcs) == 2
    assert is_in_F(G, f)
    assert is_in_F(SignedDigraph.clique(2, Sign.ZERO, loops=True), f)
    assert not is_in_F(SignedDigraph.cycle(2, Sign.POS), f)


def test_membership_equals_interaction_subgraph():
    rng = random.Random(10)
    for _ in range(150):
        n = rng.randint(1, 3)
        s = rng.choice((2, 3))
        table = [tuple(rng.randrange(s) for _ in range(n)) for _ in range(s**n)]
        f = Network(n, s, table=table)
        D = random_digraph(rng, n, 0.6)
        assert is_in_F(D, f) == is_subgraph(interaction_graph(f), D)


def test_admissible_local_functions_are_monotone():
    rng = random.Random(11)
    for _ in range(30):
        D = random_digraph(rng, rng.randint(1, 3), 0.5)
        s = 2 if D.n == 3 else rng.choice((2, 3))
        for i in range(D.n):
            inputs = [j for j, _ in D.in_arcs(i)]
            fns = admissible_local_functions(D, s, i)
            assert len({tuple(sorted(fn.items())) for fn in fns}) == len(fns)
            for fn in rng.sample(fns, min(5, len(fns))):
                for x, y in product(all_states(D.n, s), repeat=2):
                    if leq_i(D, i, x, y):
                        assert fn[tuple(x[j] for j in inputs)] <= fn[tuple(y[j] for j in inputs)]


def test_admissible_local_function_counts():
    # monotone Boolean functions of 0, 1 and 2 variables: 2, 3, 6
    for k, count in [(0, 2), (1, 3), (2, 6)]:
        D = SignedDigraph(3, [(j, 2, Sign.POS) for j in range(k)])
        assert len(admissible_local_functions(D, 2, 2)) == count
    # an unsigned input allows every function of it
    assert len(admissible_local_functions(SignedDigraph(2, [(0, 1, Sign.ZERO)]), 3, 1)) == 27


def test_synthesis_round_trip_on_maximum_sets():
    rng = random.Random(12)
    for _ in range(60):
        D = random_digraph(rng, rng.randint(1, 4), rng.uniform(0.2, 0.7))
        s = rng.choice((2, 3)) if D.n <= 3 else 2
        res = guessing_number(D, s)
        f = network_from_independent_set(D, s, res.witness)
        assert is_in_F(D, f)
        assert fixed_points(f).count == res.alpha
        assert all(f(x) == tuple(x) for x in res.witness)


def test_synthesis_rejects_adjacent_pairs():
    D = SignedDigraph.clique(3, Sign.NEG)
    with pytest.raises(InputError, match="0,0,0"):
        network_from_independent_set(D, 2, [(0, 0, 0), (1, 0, 0)])
    with pytest.raises(InputError):
        network_fixing_pair(D, 2, (0, 0, 0), (0, 1, 1))


def test_pair_network_for_every_non_edge():
    rng = random.Random(13)
    for _ in range(25):
        D = random_digraph(rng, 3, 0.5)
        for x, y in combinations(all_states(3, 2), 2):
            if not is_edge(D, 2, x, y):
                f = network_fixing_pair(D, 2, x, y)
                assert f(x) == x and f(y) == y and is_in_F(D, f)


def test_fixed_points_are_independent():
    D = SignedDigraph.clique(3, Sign.POS)
    f = network_from_independent_set(D, 3, guessing_number(D, 3).witness)
    rep = fixed_points(f, D)
    assert rep.count == 4 and rep.is_independent_in_guessing_graph


def test_kn_minus_network():
    for n, s, w in [(3, 2, 1), (4, 2, 2), (3, 3, 3)]:
        f = kn_minus_network(n, s, w)
        assert is_in_F(SignedDigraph.clique(n, Sign.NEG), f)
        assert {tuple(x) for x in fixed_points(f).fixed_points} == set(codes.level(n, w, s))
    f = kn_minus_network(3, 2, 1)
    conv = converges_to(f, codes.level(3, 1, 2))
    assert not conv
    assert set(map(tuple, conv.cycle)) == {(0, 0, 0), (1, 1, 1)}
    assert trajectory(f, (0, 0, 0), 2) == [(0, 0, 0), (1, 1, 1), (0, 0, 0)]


def test_kn_plus_network_three_steps():
    C = codes.max_constant_weight_code(7, 4, 3)
    f = kn_plus_network(list(C.codewords), 7, 3)
    assert is_in_F(SignedDigraph.clique(7, Sign.POS), f)
    target = set(C.codewords) | {(0,) * 7, (1,) * 7}
    assert {tuple(x) for x in fixed_points(f).fixed_points} == target
    conv = converges_to(f, target, kmax=3)
    assert conv and conv.max_steps <= 3
    assert all(iterate(f, x, 3) in target for x in all_states(7, 2))


def test_kn_plus_network_validation():
    C = codes.max_constant_weight_code(7, 4, 3)
    with pytest.raises(InputError):
        kn_plus_network(list(C.codewords), 7, 2)
    with pytest.raises(InputError):
        kn_plus_network([(1, 1, 1, 0, 0, 0, 0), (1, 1, 0, 1, 0, 0, 0)], 7, 3)
    with pytest.raises(InputError):
        kn_plus_network([(1, 1, 1, 0, 0, 0)], 6, 3)


def test_converges_to_identity_and_kmax():
    f = identity(2, 2)
    assert converges_to(f, all_states(2, 2)).max_steps == 0
    shift = Network(3, 2, rule=lambda x: (1,) + x[:2])
    assert converges_to(shift, [(1, 1, 1)]).max_steps == 3
    assert not converges_to(shift, [(1, 1, 1)], kmax=2)


def test_brute_force_matches_alpha():
    rng = random.Random(14)
    for _ in range(40):
        D = random_digraph(rng, rng.randint(1, 3), rng.uniform(0.1, 0.5))
        try:
            brute = brute_force_max_fixed_points(D, 2, cap=10**5)
        except CapExceeded:
            continue
        assert brute == guessing_number(D, 2).alpha
    D = SignedDigraph.cycle(2, Sign.POS)
    assert brute_force_max_fixed_points(D, 3) == 3


def test_fixed_points_of_random_members_are_codes():
    rng = random.Random(15)
    for _ in range(400):
        D = random_digraph(rng, rng.randint(1, 3), rng.uniform(0.2, 0.8))
        gamma = nonneg_girth(D)
        local = [rng.choice(admissible_local_functions(D, 2, i)) for i in range(D.n)]
        inputs = [[j for j, _ in D.in_arcs(i)] for i in range(D.n)]
        f = Network(D.n, 2, rule=lambda x: tuple(local[i][tuple(x[j] for j in inputs[i])] for i in range(D.n)))
        fix = fixed_points(f).fixed_points
        for a, b in combinations(fix, 2):
            assert distance(a, b, DistanceKind.HAMMING) >= gamma
