import random
from itertools import product

import pytest
from hypothesis import strategies as st

from netfix.digraph import Sign, SignedDigraph

SIGNS = (Sign.NEG, Sign.ZERO, Sign.POS)


def random_digraph(rng: random.Random, n: int, p: float = 0.4, loops: bool = True) -> SignedDigraph:
    arcs = [
        (u, v, rng.choice(SIGNS))
        for u, v in product(range(n), repeat=2)
        if (u != v or loops) and rng.random() < p
    ]
    return SignedDigraph(n, arcs)


@st.composite
def digraphs(draw, max_n: int = 4, loops: bool = True):
    n = draw(st.integers(1, max_n))
    arcs = []
    for u, v in product(range(n), repeat=2):
        if u == v and not loops:
            continue
        sg = draw(st.sampled_from((None,) + SIGNS))
        if sg is not None:
            arcs.append((u, v, sg))
    return SignedDigraph(n, arcs)


@pytest.fixture
def rng():
    return random.Random(12345)
