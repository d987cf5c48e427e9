"""Constructive gadgets from the Clique reductions.

Vertex ``x`` of the input graph becomes candidate ``x``. Whenever a set of
candidates is listed inside a vote, its members appear in ascending index
order.
"""

from __future__ import annotations

from math import comb

from .core import CandidateMatching, Election, InvalidArgumentError, VoterMatching
from .hard.graph import Graph


def graph_to_election(h: Graph) -> Election:
    """Election with candidates ``V(H)`` plus two fresh candidates
    ``alpha = n`` and ``beta = n + 1``, and four voters per edge ``{x, y}``
    (``x < y``), edges taken in ascending order::

        x > y > alpha > beta > rest
        x > y > beta > alpha > rest
        y > x > alpha > beta > rest
        y > x > beta > alpha > rest
    """
    edges = h.edges
    if not edges:
        raise InvalidArgumentError("graph has no edges")
    alpha, beta = h.n, h.n + 1
    votes = []
    for x, y in edges:
        rest = [z for z in range(h.n) if z not in (x, y)]
        for top in ((x, y), (y, x)):
            for tail in ((alpha, beta), (beta, alpha)):
                votes.append((*top, *tail, *rest))
    return Election(h.n + 2, votes)


def clique_to_subiso_instance(g: Graph, k: int) -> tuple[Election, Election]:
    """``(E_K, E_G)`` with ``K`` the complete graph on ``k`` vertices: the
    first is a subelection of the second iff ``g`` has a ``k``-clique."""
    if k < 2:
        raise InvalidArgumentError("clique size must be at least 2")
    if g.n < k or g.num_edges < comb(k, 2):
        raise InvalidArgumentError(
            f"graph needs at least {k} vertices and {comb(k, 2)} edges for k={k}"
        )
    return graph_to_election(Graph.complete(k)), graph_to_election(g)


def clique_to_common_cand_instance(g: Graph) -> tuple[Election, Election, CandidateMatching, VoterMatching]:
    """Two elections over ``V(G)`` with one matched voter pair per vertex ``x``::

        E1: non-neighbours(x) > x > neighbours(x)
        E2: x > non-neighbours(x) > neighbours(x)

    The largest candidate set keeping all pairs identical is a maximum clique.
    """
    if g.n < 1:
        raise InvalidArgumentError("graph has no vertices")
    first, second = [], []
    for x in range(g.n):
        far, near = g.non_neighbors(x), g.neighbors(x)
        first.append((*far, x, *near))
        second.append((x, *far, *near))
    return (
        Election(g.n, first),
        Election(g.n, second),
        CandidateMatching.identity(g.n),
        VoterMatching.identity(g.n),
    )
