"""Random instance generators shared by the tests."""

from __future__ import annotations

import random
from itertools import combinations

from subelections.core import (
    CandidateMatching,
    Election,
    MatchingCase,
    VoterMatching,
    apply_candidate_renaming,
    permute_voters,
)
from subelections.hard import Graph

# a, b, c -> 0, 1, 2 and x, y, z, w -> 0, 1, 2, 3; F minus w is a relabelled E
SMALL_E = Election(3, [(0, 1, 2), (1, 0, 2), (2, 1, 0)])
SMALL_F = Election(4, [(3, 0, 1, 2), (1, 3, 0, 2), (2, 3, 1, 0)])


def random_vote(rng: random.Random, m: int) -> tuple[int, ...]:
    vote = list(range(m))
    rng.shuffle(vote)
    return tuple(vote)


def random_election(rng: random.Random, m: int, n: int, pool: int | None = None) -> Election:
    """Votes drawn from a small pool of distinct orders, so that repeats are common."""
    if pool is None:
        return Election(m, [random_vote(rng, m) for _ in range(n)])
    orders = [random_vote(rng, m) for _ in range(pool)]
    return Election(m, [rng.choice(orders) for _ in range(n)])


def random_relabel(rng: random.Random, e: Election) -> Election:
    sigma = list(range(e.m))
    rng.shuffle(sigma)
    pi = list(range(e.n))
    rng.shuffle(pi)
    return permute_voters(apply_candidate_renaming(e, sigma), pi)


def random_subelection(rng: random.Random, e: Election, m: int, n: int) -> Election:
    """A relabelled subelection of ``e`` with ``m`` candidates and ``n`` voters."""
    cands = sorted(rng.sample(range(e.m), m))
    voters = sorted(rng.sample(range(e.n), n))
    index = {c: i for i, c in enumerate(cands)}
    votes = [tuple(index[c] for c in e.votes[v] if c in index) for v in voters]
    return random_relabel(rng, Election(m, votes))


def random_partial_matching(rng: random.Random, left: int, right: int, cls, total_left: bool = False):
    size = min(left, right) if total_left else rng.randint(0, min(left, right))
    lefts = list(range(left)) if total_left else rng.sample(range(left), size)
    rights = rng.sample(range(right), len(lefts))
    return cls(zip(lefts, rights))


def random_case(rng: random.Random, kind: str, e1: Election, e2: Election, total_left: bool = False) -> MatchingCase:
    sigma = pi = None
    if kind in ("cand", "both"):
        sigma = random_partial_matching(rng, e1.m, e2.m, CandidateMatching, total_left)
    if kind in ("voter", "both"):
        pi = random_partial_matching(rng, e1.n, e2.n, VoterMatching, total_left)
    return MatchingCase(sigma, pi)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(x, y) for x, y in combinations(range(n), 2) if rng.random() < p])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
