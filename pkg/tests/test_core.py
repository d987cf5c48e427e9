import random
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from helpers import SMALL_E, SMALL_F, random_election
from subelections.core import (
    CandidateMatching,
    Election,
    InvalidArgumentError,
    IsoWitness,
    MatchingCase,
    Variant,
    VoterMatching,
    apply_candidate_renaming,
    election_size,
    is_single_peaked_vote,
    most_frequent_vote_count,
    permute_voters,
    restrict_to_candidates,
    restrict_to_voters,
    swap_distance,
    verify_witness,
)
from subelections.iso import election_isomorphism


def test_election_rejects_non_permutations():
    with pytest.raises(InvalidArgumentError):
        Election(3, [(0, 1, 1)])
    with pytest.raises(InvalidArgumentError):
        Election(3, [(0, 1)])
    with pytest.raises(InvalidArgumentError):
        Election(2, [])
    with pytest.raises(InvalidArgumentError):
        Election(0, [()])


def test_positions_are_inverse_of_votes():
    e = Election(4, [(2, 0, 3, 1)])
    assert e.positions[0] == (1, 3, 0, 2)
    assert e.prefers(0, 2, 1)
    assert not e.prefers(0, 1, 0)


def test_matching_must_be_injective():
    with pytest.raises(InvalidArgumentError):
        CandidateMatching([(0, 1), (1, 1)])
    with pytest.raises(InvalidArgumentError):
        VoterMatching([(0, 1), (0, 2)])
    assert CandidateMatching({1: 0, 0: 1}).pairs == ((0, 1), (1, 0))


class TestRestrictToCandidates:
    def test_small_pair_remove_w(self):
        # F restricted to {x, y, z}: x>y>z, y>x>z, z>y>x
        sub, index = restrict_to_candidates(SMALL_F, {0, 1, 2})
        assert index == {0: 0, 1: 1, 2: 2}
        assert sub.votes == ((0, 1, 2), (1, 0, 2), (2, 1, 0))

    def test_all_candidates_is_identity(self):
        sub, _ = restrict_to_candidates(SMALL_E, range(3))
        assert sub == SMALL_E

    def test_relative_order_kept_and_reindexed(self):
        sub, index = restrict_to_candidates(Election(3, [(0, 1, 2)]), {0, 2})
        assert index == {0: 0, 2: 1}
        assert sub.votes == ((0, 1),)

    @pytest.mark.parametrize("keep", [set(), {3}, {-1}])
    def test_errors(self, keep):
        with pytest.raises(InvalidArgumentError):
            restrict_to_candidates(SMALL_E, keep)


class TestRestrictToVoters:
    def test_all_voters_is_identity(self):
        assert restrict_to_voters(SMALL_E, range(3)) == SMALL_E

    def test_keeps_order(self):
        assert restrict_to_voters(SMALL_E, {2, 0}).votes == (SMALL_E.votes[0], SMALL_E.votes[2])

    def test_single_voter(self):
        # second voter: b > a > c
        assert restrict_to_voters(SMALL_E, {1}).votes == ((1, 0, 2),)

    @pytest.mark.parametrize("keep", [set(), {3}])
    def test_errors(self, keep):
        with pytest.raises(InvalidArgumentError):
            restrict_to_voters(SMALL_E, keep)


class TestRenamingAndPermutation:
    def test_identity_renaming(self):
        assert apply_candidate_renaming(SMALL_E, [0, 1, 2]) == SMALL_E

    def test_swap_is_involution(self):
        e = Election(2, [(0, 1), (1, 0), (0, 1)])
        assert apply_candidate_renaming(apply_candidate_renaming(e, [1, 0]), [1, 0]) == e

    def test_small_pair_renaming(self):
        # sigma(a)=x, sigma(b)=y, sigma(c)=z maps v1 to x>y>z
        renamed = apply_candidate_renaming(SMALL_E, {0: 0, 1: 1, 2: 2})
        assert renamed.votes[0] == (0, 1, 2)
        assert apply_candidate_renaming(SMALL_E, [2, 0, 1]).votes[0] == (2, 0, 1)

    def test_renaming_rejects_non_bijection(self):
        with pytest.raises(InvalidArgumentError):
            apply_candidate_renaming(SMALL_E, [0, 0, 1])

    def test_permute_voters(self):
        assert permute_voters(SMALL_E, [0, 1, 2]) == SMALL_E
        rev = permute_voters(SMALL_E, [2, 1, 0])
        assert permute_voters(rev, [2, 1, 0]) == SMALL_E
        swapped = permute_voters(SMALL_E, [1, 0, 2])
        assert swapped.votes == (SMALL_E.votes[1], SMALL_E.votes[0], SMALL_E.votes[2])
        with pytest.raises(InvalidArgumentError):
            permute_voters(SMALL_E, [0, 0, 1])


def test_election_size():
    assert election_size(SMALL_E) == 9
    assert election_size(Election(1, [(0,)])) == 1
    assert election_size(SMALL_F) == 12


class TestSwapDistance:
    def test_examples(self):
        assert swap_distance((0, 1, 2), (0, 1, 2)) == 0
        assert swap_distance((0, 1, 2), (2, 1, 0)) == 3
        assert swap_distance((0, 1, 2), (1, 0, 2)) == 1

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            swap_distance((0, 1), (0, 1, 2))

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_metric_axioms_exhaustive(self, m):
        votes = list(permutations(range(m)))
        d = {(v, u): swap_distance(v, u) for v in votes for u in votes}
        for v in votes:
            for u in votes:
                assert (d[v, u] == 0) == (v == u)
                assert d[v, u] == d[u, v]
                for w in votes:
                    assert d[v, w] <= d[v, u] + d[u, w]

    def test_adjacent_swap_oracle(self):
        # minimum number of adjacent transpositions, by breadth-first search
        m = 4
        start = tuple(range(m))
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(m - 1):
                    u = v[:i] + (v[i + 1], v[i]) + v[i + 2:]
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        for v, steps in dist.items():
            assert swap_distance(start, v) == steps


class TestSinglePeaked:
    def test_axis_order_vote(self):
        assert is_single_peaked_vote((0, 1, 2, 3), (0, 1, 2, 3))

    def test_examples(self):
        # axis a-b-c
        assert not is_single_peaked_vote((0, 2, 1), (0, 1, 2))
        assert is_single_peaked_vote((1, 2, 0), (0, 1, 2))

    @pytest.mark.parametrize("m", range(1, 7))
    def test_count_is_power_of_two(self, m):
        axis = tuple(range(m))
        count = sum(is_single_peaked_vote(v, axis) for v in permutations(axis))
        assert count == 2 ** (m - 1)

    def test_matches_prefix_definition(self):
        axis = (2, 0, 3, 1)
        where = {c: i for i, c in enumerate(axis)}
        for v in permutations(range(4)):
            by_def = all(
                max(where[c] for c in v[:k]) - min(where[c] for c in v[:k]) == k - 1 for k in range(1, 5)
            )
            assert is_single_peaked_vote(v, axis) == by_def


def test_most_frequent_vote_count():
    assert most_frequent_vote_count(Election(2, [(0, 1)] * 4)) == 4
    assert most_frequent_vote_count(Election(3, [(0, 1, 2), (1, 0, 2), (2, 1, 0)])) == 1
    assert most_frequent_vote_count(SMALL_E) == 1


class TestVerifyWitness:
    example_witness = IsoWitness(
        CandidateMatching({0: 0, 1: 1, 2: 2}), VoterMatching({0: 0, 1: 1, 2: 2}), 9
    )

    def test_small_pair(self):
        assert verify_witness(SMALL_E, SMALL_F, self.example_witness, Variant.SUBISO)
        cand = IsoWitness(self.example_witness.sigma, self.example_witness.pi, 3)
        assert verify_witness(SMALL_E, SMALL_F, cand, Variant.CAND_SUBISO)

    def test_identity(self):
        w = IsoWitness(CandidateMatching.identity(3), VoterMatching.identity(3), 9)
        assert verify_witness(SMALL_E, SMALL_E, w, Variant.ISO)

    def test_wrong_sigma_pair(self):
        bad = IsoWitness(CandidateMatching({0: 0, 1: 3, 2: 2}), self.example_witness.pi, 9)
        assert not verify_witness(SMALL_E, SMALL_F, bad, Variant.SUBISO)

    def test_wrong_value_or_rules(self):
        w = self.example_witness
        assert not verify_witness(SMALL_E, SMALL_F, IsoWitness(w.sigma, w.pi, 8), Variant.SUBISO)
        # F has an extra candidate, so this is not an isomorphism
        assert not verify_witness(SMALL_E, SMALL_F, w, Variant.ISO)

    def test_must_agree_with_given_matchings(self):
        w = self.example_witness
        other = MatchingCase(CandidateMatching({0: 1, 1: 0, 2: 2}))
        assert not verify_witness(SMALL_E, SMALL_F, w, Variant.SUBISO, other)
        assert verify_witness(SMALL_E, SMALL_F, w, Variant.SUBISO, MatchingCase(w.sigma, w.pi))

    def test_out_of_range_is_false(self):
        w = IsoWitness(CandidateMatching({0: 7}), VoterMatching({0: 0}), 1)
        assert not verify_witness(SMALL_E, SMALL_F, w, Variant.MAX_COMMON)


@given(st.integers(1, 4), st.integers(1, 5), st.randoms(use_true_random=False))
def test_isomorphism_invariance_under_relabeling(m, n, rng):
    e = random_election(rng, m, n)
    sigma = list(range(m))
    rng.shuffle(sigma)
    pi = list(range(n))
    rng.shuffle(pi)
    other = permute_voters(apply_candidate_renaming(e, sigma), pi)
    witness = election_isomorphism(e, other)
    assert witness is not None
    assert verify_witness(e, other, witness, Variant.ISO)


@given(st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_restrictions_commute(m, n, rng):
    e = random_election(rng, m, n)
    cands = rng.sample(range(m), rng.randint(1, m))
    voters = rng.sample(range(n), rng.randint(1, n))
    a = restrict_to_voters(restrict_to_candidates(e, cands)[0], voters)
    b = restrict_to_candidates(restrict_to_voters(e, voters), cands)[0]
    assert a == b
