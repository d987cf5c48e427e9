"""Exact exponential solvers and the approximation algorithm for the NP-hard
subelection variants."""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from ..core import (
    NO_MATCHING,
    CandidateMatching,
    CaseKind,
    Election,
    InvalidArgumentError,
    IsoWitness,
    MatchingCase,
    VoterMatching,
)
from ..iso import subelection_isomorphism_given_cand_matching
from .graph import Graph, max_clique


def _prefix_codes(e: Election) -> list[list[tuple[int, ...]]]:
    """``codes[j][a]``: relative order of candidates ``0..j-1`` in vote ``a``,
    as the tuple of per-step insertion ranks."""
    codes = [[()] * e.n]
    for j in range(e.m):
        prev = codes[-1]
        row = []
        for a in range(e.n):
            pos = e.positions[a]
            rank = sum(1 for i in range(j) if pos[i] < pos[j])
            row.append(prev[a] + (rank,))
        codes.append(row)
    return codes


def _injection_search(e1: Election, e2: Election, pi: VoterMatching | None, candidate_only: bool):
    """Enumerate injections of E1's candidates into E2's in lexicographic
    order, pruning a prefix as soon as E1's restricted votes can no longer be
    found among E2's (per matched pair when ``pi`` is given, as a multiset
    otherwise)."""
    m1, m2 = e1.m, e2.m
    codes1 = _prefix_codes(e1)
    need = [Counter(row) for row in codes1]
    pairs = list(pi) if pi is not None else None
    sigma: list[int] = []
    used = [False] * m2

    def feasible(prefix2) -> bool:
        j = len(sigma)
        if pairs is not None:
            return all(codes1[j][a] == prefix2[b] for a, b in pairs)
        have = Counter(prefix2)
        return all(have[key] >= cnt for key, cnt in need[j].items())

    def extend(prefix2):
        j = len(sigma)
        if j == m1:
            witness = subelection_isomorphism_given_cand_matching(
                e1, e2, CandidateMatching(enumerate(sigma)), pi, candidate_only
            )
            return witness
        for d in range(m2):
            if used[d]:
                continue
            nxt = []
            for b in range(e2.n):
                pos = e2.positions[b]
                rank = sum(1 for c in sigma if pos[c] < pos[d])
                nxt.append(prefix2[b] + (rank,))
            sigma.append(d)
            used[d] = True
            if feasible(nxt):
                found = extend(nxt)
                if found is not None:
                    return found
            sigma.pop()
            used[d] = False
        return None

    return extend([()] * e2.n)


def _shape_ok(e1: Election, e2: Election, case: MatchingCase) -> bool:
    case.validate(e1, e2)
    if e1.m > e2.m or e1.n > e2.n:
        return False
    if case.pi is not None and case.pi.left != frozenset(range(e1.n)):
        return False
    return True


def subelection_isomorphism(e1: Election, e2: Election, case: MatchingCase = NO_MATCHING) -> IsoWitness | None:
    """Is ``e1`` isomorphic to a subelection of ``e2``? Runs in O*(m2^m1).

    When the case carries a candidate matching the polynomial algorithm is
    used directly.
    """
    if not _shape_ok(e1, e2, case):
        return None
    if case.kind in (CaseKind.CANDIDATE, CaseKind.BOTH):
        if case.sigma.left != frozenset(range(e1.m)):
            return None
        return subelection_isomorphism_given_cand_matching(e1, e2, case.sigma, case.pi)
    return _injection_search(e1, e2, case.pi, candidate_only=False)


def cand_subelection_isomorphism(e1: Election, e2: Election, case: MatchingCase = NO_MATCHING) -> IsoWitness | None:
    """Is ``e1`` isomorphic to a candidate subelection of ``e2`` (no voter deleted)?"""
    if e1.n != e2.n or not _shape_ok(e1, e2, case):
        return None
    if case.pi is not None and len(case.pi) != e1.n:
        return None
    if case.kind in (CaseKind.CANDIDATE, CaseKind.BOTH):
        if case.sigma.left != frozenset(range(e1.m)):
            return None
        return subelection_isomorphism_given_cand_matching(e1, e2, case.sigma, case.pi, candidate_only=True)
    return _injection_search(e1, e2, case.pi, candidate_only=True)


def _check_total(e1: Election, e2: Election, sigma: CandidateMatching, pi: VoterMatching) -> dict[int, int]:
    if e1.m != e2.m or e1.n != e2.n:
        raise InvalidArgumentError("both elections need equal candidate and voter counts")
    sigma.check_bounds(e1.m, e2.m)
    pi.check_bounds(e1.n, e2.n)
    if len(sigma) != e1.m or len(pi) != e1.n:
        raise InvalidArgumentError("candidate and voter matchings must be total")
    return sigma.as_dict()


def build_conflict_graph(e1: Election, e2: Election, sigma: CandidateMatching, pi: VoterMatching) -> Graph:
    """Complete graph on E1's candidates minus every pair ``{x, y}`` that some
    matched voter pair orders oppositely (after renaming by ``sigma``)."""
    s = _check_total(e1, e2, sigma, pi)
    conflicts = set()
    for a, b in pi:
        p1, p2 = e1.positions[a], e2.positions[b]
        for x, y in combinations(range(e1.m), 2):
            if (p1[x] < p1[y]) != (p2[s[x]] < p2[s[y]]):
                conflicts.add((x, y))
    return Graph(e1.m, (xy for xy in combinations(range(e1.m), 2) if xy not in conflicts))


def _cand_witness(sigma: CandidateMatching, pi: VoterMatching, keep) -> IsoWitness:
    s = sigma.as_dict()
    return IsoWitness(CandidateMatching((c, s[c]) for c in keep), pi, len(keep))


def max_common_cand_subelection_both(
    e1: Election, e2: Election, sigma: CandidateMatching, pi: VoterMatching
) -> IsoWitness:
    """Maximum candidate set keeping every matched voter pair identical,
    solved as a maximum clique of the conflict graph."""
    return _cand_witness(sigma, pi, max_clique(build_conflict_graph(e1, e2, sigma, pi)))


def _feasible_subset(e1: Election, e2: Election, s: dict[int, int], pi, keep) -> bool:
    keep1 = set(keep)
    keep2 = {s[c] for c in keep}
    for a, b in pi:
        mine = [s[c] for c in e1.votes[a] if c in keep1]
        theirs = [d for d in e2.votes[b] if d in keep2]
        if mine != theirs:
            return False
    return True


def common_cand_both_xp(
    e1: Election, e2: Election, sigma: CandidateMatching, pi: VoterMatching, k: int
) -> IsoWitness | None:
    """Decide whether some ``k`` candidates keep all matched pairs identical,
    by trying every ``k``-subset (O*(m^k))."""
    s = _check_total(e1, e2, sigma, pi)
    if k < 0 or k > e1.m:
        return None
    for keep in combinations(range(e1.m), k):
        if _feasible_subset(e1, e2, s, pi, keep):
            return _cand_witness(sigma, pi, keep)
    return None


def approx_common_cand_both(
    e1: Election, e2: Election, sigma: CandidateMatching, pi: VoterMatching, c: int
) -> IsoWitness:
    """Feasible candidate set of size ``min(c, OPT)`` found by checking all
    subsets of size at most ``c``; a ``t/c`` approximation for fixed ``c``."""
    if c < 1:
        raise InvalidArgumentError("approximation constant must be at least 1")
    s = _check_total(e1, e2, sigma, pi)
    for size in range(min(c, e1.m), 0, -1):
        for keep in combinations(range(e1.m), size):
            if _feasible_subset(e1, e2, s, pi, keep):
                return _cand_witness(sigma, pi, keep)
    raise AssertionError("a single candidate is always feasible")
