import pickle
from itertools import product

import pytest
from hypothesis import given, strategies as st

from netfix.digraph import Sign, SignedDigraph
from netfix.errors import InputError
from netfix.states import (
    L,
    DistanceKind,
    State,
    all_states,
    decode,
    distance,
    encode,
    frustrated_boundary,
    is_frustrated,
    leq_i,
    parse_header,
    parse_state,
)


@given(st.integers(1, 5), st.integers(2, 4), st.data())
def test_encode_decode_roundtrip(n, s, data):
    k = data.draw(st.integers(0, s**n - 1))
    assert encode(decode(k, n, s), s) == k


def test_encoding_order_is_lexicographic():
    states = list(all_states(3, 2))
    assert [encode(x, 2) for x in states] == list(range(8))
    assert states[1] == (0, 0, 1)


def test_state_validation_and_pickle():
    x = State((0, 2, 1), 3)
    assert str(x) == "0,2,1" and x.weight == 3 and x.n == 3
    assert pickle.loads(pickle.dumps(x)).s == 3
    with pytest.raises(InputError):
        State((0, 3), 3)
    with pytest.raises(InputError):
        parse_state("0;1")


def test_distances():
    x, y = (0, 1, 2, 0), (1, 1, 0, 2)
    assert L(x, y) == 2 and L(y, x) == 1
    assert distance(x, y, DistanceKind.HAMMING) == 3
    assert distance(x, y, DistanceKind.MAX) == 2
    assert distance(x, y, DistanceKind.MIN) == 1


def test_distance_mismatch():
    with pytest.raises(InputError):
        distance((0, 1), (0, 1, 0), DistanceKind.HAMMING)
    with pytest.raises(InputError):
        distance(State((0, 1), 2), State((0, 1), 3), DistanceKind.MIN)


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_distance_relations(x, y):
    h = distance(x, y, DistanceKind.HAMMING)
    M = distance(x, y, DistanceKind.MAX)
    m = distance(x, y, DistanceKind.MIN)
    assert m <= M <= h == M + m


def test_local_order():
    D = SignedDigraph(3, [(0, 2, Sign.POS), (1, 2, Sign.NEG)])
    assert leq_i(D, 2, (0, 1, 0), (1, 0, 1))
    assert not leq_i(D, 2, (1, 1, 0), (0, 0, 0))
    Z = SignedDigraph(2, [(0, 1, Sign.ZERO)])
    assert leq_i(Z, 1, (1, 0), (1, 1)) and not leq_i(Z, 1, (0, 0), (1, 0))
    # vertex 0 has no in-neighbours, so everything is comparable
    assert all(leq_i(D, 0, x, y) for x, y in product(all_states(3, 2), repeat=2))


def test_frustration():
    D = SignedDigraph(3, [(0, 1, Sign.POS), (2, 1, Sign.NEG), (1, 0, Sign.ZERO)])
    x = (0, 1, 1)
    assert is_frustrated(D, (0, 1), x)
    assert is_frustrated(D, (2, 1), x)
    assert not is_frustrated(D, (1, 0), x)
    assert frustrated_boundary(D, {1}, x) == {0, 2}
    with pytest.raises(InputError):
        is_frustrated(D, (0, 1), (0, 2, 1))


def test_header_parsing():
    assert parse_header("code n=3 s=2", "code") == (3, 2)
    for bad in ("code n=3", "network n=3 s=2", "code n=3 s=1", "code n=x s=2"):
        with pytest.raises(InputError):
            parse_header(bad, "code")
