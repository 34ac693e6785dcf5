"""Fixed points of monotone networks on signed digraphs.

The maximum number of fixed points of a network whose signed interaction
graph is contained in a signed digraph ``D`` is computed exactly as the
independence number of the guessing graph ``G(D, s)``, and bracketed by
structural and coding-theoretic bounds.
"""

from netfix.errors import CapExceeded, InputError, NetfixError
from netfix.digraph import INFINITE, Sign, SignedDigraph, parse_digraph
from netfix.states import DistanceKind, State

__all__ = [
    "CapExceeded",
    "DistanceKind",
    "INFINITE",
    "InputError",
    "NetfixError",
    "Sign",
    "SignedDigraph",
    "State",
    "parse_digraph",
]

__version__ = "0.1.0"
