import math
import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings

from conftest import digraphs, random_digraph
from netfix.digraph import Sign, SignedDigraph
from netfix.errors import CapExceeded, InputError
from netfix.guessing import (
    GuessingGraph,
    alpha,
    build_guessing_graph,
    degree_by_formula,
    edge_count_at_vertex,
    edge_count_direct,
    guessing_number,
    is_edge,
)
from netfix.states import all_states


def test_materialized_matches_predicate():
    rng = random.Random(5)
    for _ in range(60):
        D = random_digraph(rng, rng.randint(1, 3), rng.uniform(0.1, 0.8))
        s = rng.choice((2, 3))
        G = build_guessing_graph(D, s)
        for x, y in product(all_states(D.n, s), repeat=2):
            assert G.has_edge(x, y) == is_edge(D, s, x, y)


@given(digraphs(max_n=3))
@settings(max_examples=80, deadline=None)
def test_edges_symmetric_and_loop_free(D):
    G = build_guessing_graph(D, 2)
    for x in all_states(D.n, 2):
        assert not G.has_edge(x, x)
        for y in all_states(D.n, 2):
            assert G.has_edge(x, y) == G.has_edge(y, x)


@pytest.mark.parametrize("n,s", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_positive_cycle_edges_are_non_chains(n, s):
    # adjacent exactly when neither state is strictly below the other in every coordinate
    D = SignedDigraph.cycle(n, Sign.POS)
    for x, y in combinations(all_states(n, s), 2):
        chain = all(a < b for a, b in zip(x, y)) or all(a > b for a, b in zip(x, y))
        assert is_edge(D, s, x, y) == (not chain)


def test_negative_clique_edges_are_comparable_pairs():
    D = SignedDigraph.clique(4, Sign.NEG)
    for x, y in combinations(all_states(4, 2), 2):
        comparable = all(a <= b for a, b in zip(x, y)) or all(a >= b for a, b in zip(x, y))
        assert is_edge(D, 2, x, y) == comparable


def test_sign_refinement_and_negative_loops():
    rng = random.Random(6)
    for _ in range(40):
        D = random_digraph(rng, 3, 0.5, loops=False)
        G = build_guessing_graph(D, 2)
        G0 = build_guessing_graph(D.unsigned(), 2)
        for a, b in zip(G0.adjacency, G.adjacency):
            assert a & ~b == 0
        looped = D.with_arcs([(v, v, Sign.NEG) for v in range(3) if rng.random() < 0.5])
        assert build_guessing_graph(looped, 2).adjacency == G.adjacency


@pytest.mark.parametrize(
    "D,s,expected",
    [
        (SignedDigraph.cycle(2, Sign.POS), 2, 2),
        (SignedDigraph.cycle(5, Sign.POS), 3, 3),
        (SignedDigraph.clique(3, Sign.NEG), 2, 3),
        (SignedDigraph.clique(4, Sign.NEG), 2, 6),
        (SignedDigraph.clique(3, Sign.POS), 3, 4),
        (SignedDigraph.clique(3, Sign.POS), 4, 5),
        (SignedDigraph.cycle(3, Sign.NEG), 2, 1),
        (SignedDigraph(2), 2, 1),
    ],
)
def test_known_alphas(D, s, expected):
    res = guessing_number(D, s)
    assert res.alpha == expected
    assert build_guessing_graph(D, s).is_independent(res.witness)


def test_g_reporting():
    res = guessing_number(SignedDigraph.cycle(4, Sign.POS), 2)
    assert res.g_integer == 1 and res.g == 1
    res = guessing_number(SignedDigraph.clique(3, Sign.POS), 3)
    assert res.g_integer is None and math.isclose(res.g, math.log(4, 3))
    assert guessing_number(SignedDigraph(1), 2).g == 0


def test_unmaterialized_graph_queries():
    D = SignedDigraph.clique(3, Sign.NEG)
    lazy = build_guessing_graph(D, 2, materialize=False)
    full = build_guessing_graph(D, 2)
    for x in all_states(3, 2):
        assert lazy.degree(x) == full.degree(x)
    assert alpha(lazy).alpha == 3


def test_caps():
    D = SignedDigraph.cycle(17, Sign.POS)
    with pytest.raises(CapExceeded, match="bound-only"):
        guessing_number(D, 2)
    with pytest.raises(CapExceeded):
        build_guessing_graph(D, 2, cap=1000)
    with pytest.raises(InputError):
        GuessingGraph(D, 1)


def test_degree_formula_against_enumeration():
    rng = random.Random(7)
    for _ in range(150):
        D = random_digraph(rng, rng.randint(1, 4), rng.uniform(0.2, 0.9), loops=False)
        G = build_guessing_graph(D, 2)
        for x in all_states(D.n, 2):
            assert degree_by_formula(D, x) == G.degree(x)


def test_degree_formula_rejects_loops_and_larger_alphabets():
    with pytest.raises(InputError):
        degree_by_formula(SignedDigraph(1, [(0, 0, Sign.NEG)]), (0,))
    with pytest.raises(InputError):
        degree_by_formula(SignedDigraph(2), (0, 2))


def test_edge_count_closed_form():
    rng = random.Random(8)
    for _ in range(120):
        D = random_digraph(rng, rng.randint(1, 3), rng.uniform(0.2, 0.8))
        s = rng.choice((2, 3))
        for x in all_states(D.n, s):
            for i in range(D.n):
                assert edge_count_at_vertex(D, s, x, i) == edge_count_direct(D, s, x, i)


def test_edge_count_binary_power_of_two():
    # loopless binary case: 2^(n - d_i - 1 + number of frustrated in-arcs)
    rng = random.Random(9)
    for _ in range(50):
        D = random_digraph(rng, 4, 0.5, loops=False)
        for x in all_states(4, 2):
            for i in range(4):
                arcs = D.in_arcs(i)
                if any(sg == Sign.ZERO for _, sg in arcs):
                    continue
                frustrated = sum((sg == Sign.POS) == (x[j] != x[i]) for j, sg in arcs)
                assert edge_count_at_vertex(D, 2, x, i) == 2 ** (4 - len(arcs) - 1 + frustrated)
