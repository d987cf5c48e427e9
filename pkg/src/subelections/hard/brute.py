"""Exhaustive oracle for every maximum-common-subelection variant.

It enumerates candidate subsets, their injections into the other election
and, per injection, all voter matchings. Nothing here shares code with the
polynomial solvers, so it can serve as their test oracle.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from ..core import NO_MATCHING, CaseKind, Election, InvalidArgumentError, MatchingCase, SizeLimitError

# (max candidates, max voters) per election, by matching case
BRUTE_FORCE_LIMITS = {
    CaseKind.NONE: (4, 5),
    CaseKind.VOTER: (5, 6),
    CaseKind.CANDIDATE: (6, 6),
    CaseKind.BOTH: (8, 8),
}

BRUTE_FORCE_VARIANTS = ("general", "cand", "voter")


def _max_pairs(n1: int, n2: int, compatible) -> int:
    """Largest set of disjoint compatible voter pairs, by exhaustive recursion."""

    @lru_cache(maxsize=None)
    def best(a: int, used: int) -> int:
        if a == n1:
            return 0
        top = best(a + 1, used)
        for b in range(n2):
            if not used >> b & 1 and compatible(a, b):
                top = max(top, 1 + best(a + 1, used | 1 << b))
        return top

    return best(0, 0)


def _injections(e1: Election, e2: Election, variant: str, case: MatchingCase):
    given = case.sigma.as_dict() if case.sigma is not None else None
    if variant == "voter":
        sizes = [e1.m] if e1.m == e2.m else []
    else:
        sizes = range(1, min(e1.m, e2.m) + 1)
    for size in sizes:
        for keep in combinations(range(e1.m), size):
            if given is not None:
                if all(c in given for c in keep):
                    yield keep, tuple(given[c] for c in keep)
                continue
            for image in permutations(range(e2.m), size):
                yield keep, image


def brute_force_max_common(
    e1: Election,
    e2: Election,
    variant: str = "general",
    case: MatchingCase = NO_MATCHING,
    limits: dict | None = None,
) -> int:
    """Exact optimum of Max. Common (``general``), Cand.- (``cand``) or
    Voter- (``voter``) Subelection under ``case``, by exhaustive search.

    The value is candidates x voters, candidates, or voters respectively;
    0 when no nonempty common subelection exists.

    Raises:
        SizeLimitError: if either election exceeds the limits for the case.
    """
    if variant not in BRUTE_FORCE_VARIANTS:
        raise InvalidArgumentError(f"unknown variant {variant!r}; expected one of {BRUTE_FORCE_VARIANTS}")
    case.validate(e1, e2)
    max_m, max_n = (limits or BRUTE_FORCE_LIMITS)[case.kind]
    if max(e1.m, e2.m) > max_m or max(e1.n, e2.n) > max_n:
        raise SizeLimitError(
            f"brute force limited to {max_m} candidates and {max_n} voters "
            f"for case {case.kind.value!r}; got {e1.m}x{e1.n} and {e2.m}x{e2.n}"
        )
    if variant == "cand":
        if e1.n != e2.n or (case.pi is not None and len(case.pi) != e1.n):
            return 0
    allowed = set(case.pi) if case.pi is not None else None

    best = 0
    for keep, image in _injections(e1, e2, variant, case):
        rename = dict(zip(keep, image))
        left = [tuple(rename[c] for c in vote if c in rename) for vote in e1.votes]
        target = set(image)
        right = [tuple(d for d in vote if d in target) for vote in e2.votes]

        def compatible(a, b):
            if allowed is not None and (a, b) not in allowed:
                return False
            return left[a] == right[b]

        voters = _max_pairs(e1.n, e2.n, compatible)
        if variant == "cand":
            value = len(keep) if voters == e1.n else 0
        elif variant == "voter":
            value = voters
        else:
            value = len(keep) * voters
        best = max(best, value)
    return best
