"""Polynomial-time solvers for the voter-subelection family.

Every solver follows the same pattern: a pair of voters ``(v, u)`` assumed to
be matched fixes the candidate bijection (v's i-th candidate goes to u's i-th
candidate); under that bijection the best voter matching is a maximum matching
between equal votes.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import (
    NO_MATCHING,
    CandidateMatching,
    CaseKind,
    Election,
    InvalidArgumentError,
    IsoWitness,
    MatchingCase,
    Variant,
    VoterMatching,
)
from .matching import equal_key_matching

# m**m must fit in int64 for the vectorised vote encoding
_MAX_VECTOR_M = 15
_CHUNK_CELLS = 4_000_000

EMPTY_WITNESS = IsoWitness(CandidateMatching(), VoterMatching(), 0)


def _sigma_tuple(v: Sequence[int], u: Sequence[int]) -> tuple[int, ...]:
    sigma = [0] * len(v)
    for c, d in zip(v, u):
        sigma[c] = d
    return tuple(sigma)


def derive_candidate_bijection(v: Sequence[int], u: Sequence[int]) -> CandidateMatching:
    """Match the rank-i candidate of ``v`` with the rank-i candidate of ``u``."""
    if len(v) != len(u):
        raise InvalidArgumentError("votes have different numbers of candidates")
    return CandidateMatching(zip(v, u))


def _rename(e: Election, sigma: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(sigma[c] for c in vote) for vote in e.votes]


def _pairs_under(e1: Election, e2: Election, sigma, allowed: VoterMatching | None):
    renamed = _rename(e1, sigma)
    if allowed is None:
        return equal_key_matching(renamed, e2.votes)
    return [(a, b) for a, b in allowed if renamed[a] == e2.votes[b]]


def _first_occurrences(votes: Sequence[tuple[int, ...]]) -> list[int]:
    """Index of the first copy of each distinct vote, in order."""
    seen = {}
    for i, vote in enumerate(votes):
        seen.setdefault(vote, i)
    return list(seen.values())


def _scores_vectorised(
    e1: Election, e2: Election, anchors: Sequence[int], targets: Sequence[int] | None = None
) -> np.ndarray:
    """``out[i, j]`` = max matching size under the bijection derived from
    voter ``anchors[i]`` of ``e1`` and voter ``targets[j]`` of ``e2`` (all
    of ``e2``'s voters by default)."""
    if targets is None:
        targets = range(e2.n)
    targets = np.asarray(list(targets), dtype=np.int64)
    m = e1.m
    v1 = np.asarray(e1.votes, dtype=np.int64)
    p1 = np.asarray(e1.positions, dtype=np.int64)[list(anchors)]
    v2 = np.asarray(e2.votes, dtype=np.int64)
    weights = m ** np.arange(m, dtype=np.int64)

    codes2 = v2 @ weights
    uniq, counts2 = np.unique(codes2, return_counts=True)
    k = len(uniq)

    n1, nt = e1.n, len(targets)
    out = np.empty((len(anchors), nt), dtype=np.int64)
    rows_per_chunk = max(1, _CHUNK_CELLS // (nt * n1 * m))
    for start in range(0, len(anchors), rows_per_chunk):
        p = p1[start:start + rows_per_chunk]
        # sig[i, j, c] = v2[targets[j], p[i, c]]
        sig = v2[targets[None, :, None], p[:, None, :]]
        codes = sig[:, :, v1] @ weights  # (rows, nt, n1)
        idx = np.searchsorted(uniq, codes)
        idx_c = np.minimum(idx, k - 1)
        cls = np.where(uniq[idx_c] == codes, idx_c, k)
        rows = codes.shape[0] * nt
        flat = (np.arange(rows, dtype=np.int64)[:, None] * (k + 1) + cls.reshape(rows, n1)).ravel()
        counts1 = np.bincount(flat, minlength=rows * (k + 1)).reshape(rows, k + 1)[:, :k]
        out[start:start + len(p)] = np.minimum(counts1, counts2[None, :]).sum(axis=1).reshape(len(p), nt)
    return out


def _anchor_sigmas(e1: Election, e2: Election, anchors: Iterable[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    seen = set()
    for a, b in anchors:
        sigma = _sigma_tuple(e1.votes[a], e2.votes[b])
        if sigma not in seen:
            seen.add(sigma)
            yield sigma


def _to_witness(sigma, pairs) -> IsoWitness:
    return IsoWitness(CandidateMatching(enumerate(sigma)), VoterMatching(pairs), len(pairs))


def _best_witness(e1, e2, sigmas, allowed, threshold):
    best = None
    for sigma in sigmas:
        pairs = _pairs_under(e1, e2, sigma, allowed)
        if threshold is not None and len(pairs) >= threshold:
            return _to_witness(sigma, pairs)
        key = (-len(pairs), pairs, sigma)
        if best is None or key < best:
            best = key
    if best is None:
        return EMPTY_WITNESS
    return _to_witness(best[2], best[1])


def _search(e1: Election, e2: Election, case: MatchingCase, threshold, anchor_first: bool) -> IsoWitness:
    """Maximum common voter subelection; with ``anchor_first`` only bijections
    that keep E1's first relevant voter are tried (enough when all of E1 must
    be kept)."""
    case.validate(e1, e2)
    if e1.m != e2.m:
        return EMPTY_WITNESS
    kind = case.kind

    if kind in (CaseKind.CANDIDATE, CaseKind.BOTH):
        sigma_map = case.sigma.as_dict()
        if len(sigma_map) != e1.m:
            # a voter subelection keeps every candidate
            return EMPTY_WITNESS
        sigma = tuple(sigma_map[c] for c in range(e1.m))
        pairs = _pairs_under(e1, e2, sigma, case.pi)
        return _to_witness(sigma, pairs) if pairs else IsoWitness(case.sigma, VoterMatching(), 0)

    if kind is CaseKind.VOTER:
        given = list(case.pi)
        anchors = given[:1] if anchor_first else given
        return _best_witness(e1, e2, _anchor_sigmas(e1, e2, anchors), case.pi, threshold)

    # the bijection depends only on the two votes, so one copy of each suffices
    v_range = [0] if anchor_first else _first_occurrences(e1.votes)
    u_range = _first_occurrences(e2.votes)
    if threshold is None and e1.m <= _MAX_VECTOR_M:
        scores = _scores_vectorised(e1, e2, v_range, u_range)
        best = int(scores.max())
        anchors = [(v_range[i], u_range[j]) for i, j in zip(*np.nonzero(scores == best))]
    else:
        anchors = [(v, u) for v in v_range for u in u_range]
    return _best_witness(e1, e2, _anchor_sigmas(e1, e2, anchors), None, threshold)


def max_common_voter_subelection(
    e1: Election,
    e2: Election,
    case: MatchingCase = NO_MATCHING,
    threshold: int | None = None,
) -> IsoWitness:
    """Largest voter subelections of ``e1`` and ``e2`` that are isomorphic.

    The returned witness maps every candidate and pairs the matched voters;
    its value is the number of matched voters (0 when the candidate counts
    differ). Among maximum witnesses, the one with the lexicographically
    smallest voter-pair list is returned, ties broken by the bijection.

    With ``threshold`` the scan stops at the first witness reaching it; if
    none does, the maximum witness is returned.
    """
    return _search(e1, e2, case, threshold, anchor_first=False)


def max_common_voter_subelection_value(e1: Election, e2: Election) -> int:
    """Optimal value of the unmatched problem without building a witness."""
    if e1.m != e2.m:
        return 0
    if e1.m <= _MAX_VECTOR_M:
        return int(_scores_vectorised(e1, e2, _first_occurrences(e1.votes), _first_occurrences(e2.votes)).max())
    return max_common_voter_subelection(e1, e2).value


def voter_subelection_isomorphism(
    e1: Election, e2: Election, case: MatchingCase = NO_MATCHING
) -> IsoWitness | None:
    """Is ``e1`` isomorphic to a voter subelection of ``e2``?"""
    case.validate(e1, e2)
    if e1.m != e2.m or e1.n > e2.n:
        return None
    if case.pi is not None:
        if case.pi.left != frozenset(range(e1.n)):
            return None
    witness = _search(e1, e2, case, None, anchor_first=True)
    return witness if witness.value == e1.n else None


def election_isomorphism(e1: Election, e2: Election, case: MatchingCase = NO_MATCHING) -> IsoWitness | None:
    case.validate(e1, e2)
    if e1.m != e2.m or e1.n != e2.n:
        return None
    witness = voter_subelection_isomorphism(e1, e2, case)
    if witness is None:
        return None
    return IsoWitness(witness.sigma, witness.pi, e1.m * e1.n)


def subelection_isomorphism_given_cand_matching(
    e1: Election,
    e2: Election,
    sigma: CandidateMatching,
    pi: VoterMatching | None = None,
    candidate_only: bool = False,
) -> IsoWitness | None:
    """Subelection isomorphism (or, with ``candidate_only``, candidate-subelection
    isomorphism) when the candidate matching is fixed and covers all of ``e1``.

    ``e2`` is cut down to the image of ``sigma`` and renamed back into
    ``e1``'s candidate indices; what remains is voter-subelection isomorphism
    with both candidate sets identified.
    """
    sigma.check_bounds(e1.m, e2.m)
    if sigma.left != frozenset(range(e1.m)):
        raise InvalidArgumentError("candidate matching must cover every candidate of the smaller election")
    if pi is not None:
        pi.check_bounds(e1.n, e2.n)
    if e1.n > e2.n or (candidate_only and e1.n != e2.n):
        return None

    back = sigma.inverse().as_dict()
    reduced = [tuple(back[d] for d in vote if d in back) for vote in e2.votes]
    if pi is None:
        pairs = equal_key_matching(e1.votes, reduced)
    else:
        pairs = [(a, b) for a, b in pi if e1.votes[a] == reduced[b]]
    if len(pairs) != e1.n:
        return None
    variant = Variant.CAND_SUBISO if candidate_only else Variant.SUBISO
    return IsoWitness(sigma, VoterMatching(pairs), variant.measure(e1.m, e1.n))
