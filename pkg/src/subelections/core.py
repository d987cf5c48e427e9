"""Election data model and the elementary operations on it.

Candidates are dense integer indices ``0..m-1``; a vote is a tuple listing
candidates from most to least preferred. Human-readable candidate names live
in the I/O layer only.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Vote = tuple[int, ...]


class InvalidArgumentError(ValueError):
    """Raised when an operation receives arguments violating its preconditions."""


class SizeLimitError(RuntimeError):
    """Raised when an exhaustive solver refuses an instance that is too large."""


def _check_permutation(seq: Sequence[int], size: int, what: str) -> tuple[int, ...]:
    perm = tuple(int(x) for x in seq)
    if len(perm) != size or sorted(perm) != list(range(size)):
        raise InvalidArgumentError(f"{what} is not a permutation of 0..{size - 1}: {list(seq)}")
    return perm


@dataclass(frozen=True)
class Election:
    """An ordinal election over candidates ``0..m-1``.

    ``positions[i][c]`` is the position of candidate ``c`` in vote ``i``; it is
    derived from ``votes`` on construction.
    """

    m: int
    votes: tuple[Vote, ...]
    positions: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, m: int, votes: Iterable[Sequence[int]]):
        if m < 1:
            raise InvalidArgumentError("an election needs at least one candidate")
        checked = tuple(_check_permutation(v, m, "vote") for v in votes)
        if not checked:
            raise InvalidArgumentError("an election needs at least one vote")
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "votes", checked)
        inverse = []
        for vote in checked:
            pos = [0] * m
            for i, c in enumerate(vote):
                pos[c] = i
            inverse.append(tuple(pos))
        object.__setattr__(self, "positions", tuple(inverse))

    @property
    def n(self) -> int:
        return len(self.votes)

    def __len__(self) -> int:
        return len(self.votes)

    def prefers(self, voter: int, a: int, b: int) -> bool:
        """Whether ``voter`` ranks candidate ``a`` above candidate ``b``."""
        pos = self.positions[voter]
        return pos[a] < pos[b]


class Matching:
    """A partial injective map, stored as sorted ``(left, right)`` pairs."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[int, int]] | Mapping[int, int] = ()):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        items = tuple(sorted((int(a), int(b)) for a, b in pairs))
        lefts = [a for a, _ in items]
        rights = [b for _, b in items]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise InvalidArgumentError(f"{type(self).__name__} is not injective: {list(items)}")
        if any(x < 0 for x in lefts + rights):
            raise InvalidArgumentError("matching indices must be nonnegative")
        self.pairs: tuple[tuple[int, int], ...] = items

    @classmethod
    def identity(cls, size: int):
        return cls((i, i) for i in range(size))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.pairs))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in self.pairs)
        return f"{type(self).__name__}({body})"

    @property
    def left(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.pairs)

    @property
    def right(self) -> frozenset[int]:
        return frozenset(b for _, b in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def inverse(self):
        return type(self)((b, a) for a, b in self.pairs)

    def issubset(self, other: "Matching") -> bool:
        return set(self.pairs) <= set(other.pairs)

    def check_bounds(self, left_size: int, right_size: int) -> None:
        for a, b in self.pairs:
            if a >= left_size or b >= right_size:
                raise InvalidArgumentError(
                    f"{type(self).__name__} pair ({a}, {b}) out of range "
                    f"for sizes {left_size} and {right_size}"
                )


class CandidateMatching(Matching):
    """Pairs ``(candidate of E1, candidate of E2)``."""


class VoterMatching(Matching):
    """Pairs ``(voter of E1, voter of E2)``."""


@dataclass(frozen=True)
class IsoWitness:
    sigma: CandidateMatching
    pi: VoterMatching
    value: int


class CaseKind(enum.Enum):
    NONE = "none"
    VOTER = "voter"
    CANDIDATE = "cand"
    BOTH = "both"


@dataclass(frozen=True)
class MatchingCase:
    """Which correspondences between the two elections are fixed in advance."""

    sigma: CandidateMatching | None = None
    pi: VoterMatching | None = None

    @property
    def kind(self) -> CaseKind:
        if self.sigma is None:
            return CaseKind.NONE if self.pi is None else CaseKind.VOTER
        return CaseKind.CANDIDATE if self.pi is None else CaseKind.BOTH

    def validate(self, e1: Election, e2: Election) -> None:
        if self.sigma is not None:
            self.sigma.check_bounds(e1.m, e2.m)
        if self.pi is not None:
            self.pi.check_bounds(e1.n, e2.n)


NO_MATCHING = MatchingCase()


class Variant(enum.Enum):
    """Problem variants; the value tells which measure a witness is scored by."""

    ISO = "iso"
    SUBISO = "subiso"
    CAND_SUBISO = "cand-subiso"
    VOTER_SUBISO = "voter-subiso"
    MAX_COMMON = "max-common"
    MAX_COMMON_CAND = "max-common-cand"
    MAX_COMMON_VOTER = "max-common-voter"

    @property
    def keeps_all_voters(self) -> bool:
        return self in (Variant.CAND_SUBISO, Variant.MAX_COMMON_CAND)

    @property
    def keeps_all_candidates(self) -> bool:
        return self in (Variant.VOTER_SUBISO, Variant.MAX_COMMON_VOTER)

    @property
    def is_decision(self) -> bool:
        return self in (Variant.ISO, Variant.SUBISO, Variant.CAND_SUBISO, Variant.VOTER_SUBISO)

    def measure(self, n_candidates: int, n_voters: int) -> int:
        if self.keeps_all_voters:
            return n_candidates
        if self.keeps_all_candidates:
            return n_voters
        return n_candidates * n_voters


def restrict_to_candidates(e: Election, keep: Iterable[int]) -> tuple[Election, dict[int, int]]:
    """Delete all candidates outside ``keep``.

    Survivors are re-indexed in ascending order of their original index.

    Returns:
        The restricted election and the map from original to new indices.
    """
    kept = sorted(set(int(c) for c in keep))
    if not kept:
        raise InvalidArgumentError("cannot restrict to an empty candidate set")
    if kept[0] < 0 or kept[-1] >= e.m:
        raise InvalidArgumentError(f"candidate index out of range 0..{e.m - 1}")
    new_index = {c: i for i, c in enumerate(kept)}
    votes = [tuple(new_index[c] for c in vote if c in new_index) for vote in e.votes]
    return Election(len(kept), votes), new_index


def restrict_to_voters(e: Election, keep: Iterable[int]) -> Election:
    kept = sorted(set(int(i) for i in keep))
    if not kept:
        raise InvalidArgumentError("cannot restrict to an empty voter set")
    if kept[0] < 0 or kept[-1] >= e.n:
        raise InvalidArgumentError(f"voter index out of range 0..{e.n - 1}")
    return Election(e.m, [e.votes[i] for i in kept])


def apply_candidate_renaming(e: Election, sigma: Sequence[int] | Mapping[int, int] | CandidateMatching) -> Election:
    """Replace every candidate ``c`` by ``sigma[c]``; sigma must be a bijection on ``0..m-1``."""
    if isinstance(sigma, Matching):
        sigma = sigma.as_dict()
    if isinstance(sigma, Mapping):
        if set(sigma) != set(range(e.m)):
            raise InvalidArgumentError("renaming must be defined on every candidate")
        sigma = [sigma[c] for c in range(e.m)]
    perm = _check_permutation(sigma, e.m, "candidate renaming")
    return Election(e.m, [tuple(perm[c] for c in vote) for vote in e.votes])


def permute_voters(e: Election, pi: Sequence[int]) -> Election:
    """Reorder votes so that the ``i``-th vote of the result is vote ``pi[i]`` of ``e``."""
    perm = _check_permutation(pi, e.n, "voter permutation")
    return Election(e.m, [e.votes[i] for i in perm])


def election_size(e: Election) -> int:
    return e.m * e.n


def swap_distance(v: Sequence[int], u: Sequence[int]) -> int:
    """Kendall-tau distance: the number of candidate pairs ordered oppositely."""
    if len(v) != len(u):
        raise InvalidArgumentError("votes have different lengths")
    pos_u = {c: i for i, c in enumerate(u)}
    if len(pos_u) != len(u) or set(v) != set(pos_u):
        raise InvalidArgumentError("votes are not permutations of the same candidates")
    seq = [pos_u[c] for c in v]
    return sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])


def is_single_peaked_vote(v: Sequence[int], axis: Sequence[int]) -> bool:
    """True iff every top-k prefix of ``v`` is a contiguous interval of ``axis``."""
    if len(v) != len(axis) or set(v) != set(axis):
        raise InvalidArgumentError("vote and axis range over different candidates")
    where = {c: i for i, c in enumerate(axis)}
    lo = hi = where[v[0]]
    for c in v[1:]:
        p = where[c]
        if p == lo - 1:
            lo = p
        elif p == hi + 1:
            hi = p
        else:
            return False
    return True


def most_frequent_vote_count(e: Election) -> int:
    return max(Counter(e.votes).values())


def _restricted_vote(vote: Vote, keep: frozenset[int] | set[int]) -> Vote:
    return tuple(c for c in vote if c in keep)


def verify_witness(
    e1: Election,
    e2: Election,
    witness: IsoWitness,
    variant: Variant,
    case: MatchingCase = NO_MATCHING,
) -> bool:
    """Check that ``witness`` certifies the claimed (sub)isomorphism.

    Never raises; any violation, including out-of-range indices, yields False.
    """
    sigma, pi = witness.sigma, witness.pi
    try:
        sigma.check_bounds(e1.m, e2.m)
        pi.check_bounds(e1.n, e2.n)
    except InvalidArgumentError:
        return False
    if witness.value != variant.measure(len(sigma), len(pi)):
        return False
    if case.sigma is not None and not sigma.issubset(case.sigma):
        return False
    if case.pi is not None and not pi.issubset(case.pi):
        return False

    if variant.is_decision or witness.value > 0:
        # deletion rules of the variant
        all_c1 = len(sigma) == e1.m
        all_c2 = len(sigma) == e2.m
        all_v1 = len(pi) == e1.n
        all_v2 = len(pi) == e2.n
        if variant is Variant.ISO and not (all_c1 and all_c2 and all_v1 and all_v2):
            return False
        if variant is Variant.SUBISO and not (all_c1 and all_v1):
            return False
        if variant is Variant.CAND_SUBISO and not (all_c1 and all_v1 and all_v2):
            return False
        if variant is Variant.VOTER_SUBISO and not (all_c1 and all_c2 and all_v1):
            return False
        if variant is Variant.MAX_COMMON_CAND and not (all_v1 and all_v2):
            return False
        if variant is Variant.MAX_COMMON_VOTER and not (all_c1 and all_c2):
            return False
        if len(sigma) == 0 or len(pi) == 0:
            return False

    left, mapping = sigma.left, sigma.as_dict()
    right = sigma.right
    for a, b in pi:
        renamed = tuple(mapping[c] for c in _restricted_vote(e1.votes[a], left))
        if renamed != _restricted_vote(e2.votes[b], right):
            return False
    return True
