import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from helpers import SMALL_E, SMALL_F, petersen, random_case, random_election, random_graph, random_relabel
from subelections.core import (
    CandidateMatching,
    Election,
    InvalidArgumentError,
    MatchingCase,
    SizeLimitError,
    Variant,
    VoterMatching,
    restrict_to_candidates,
    verify_witness,
)
from subelections.hard import (
    BRUTE_FORCE_LIMITS,
    Graph,
    approx_common_cand_both,
    brute_force_clique_number,
    brute_force_max_common,
    build_conflict_graph,
    cand_subelection_isomorphism,
    clique_number,
    common_cand_both_xp,
    max_clique,
    max_common_cand_subelection_both,
    subelection_isomorphism,
)
from subelections.reductions import clique_to_common_cand_instance, clique_to_subiso_instance

PATH3 = Graph(3, [(0, 1), (1, 2)])


def identity_case(e):
    return CandidateMatching.identity(e.m), VoterMatching.identity(e.n)


class TestGraph:
    def test_rejects_self_loops_and_range(self):
        with pytest.raises(InvalidArgumentError):
            Graph(3, [(1, 1)])
        with pytest.raises(InvalidArgumentError):
            Graph(3, [(0, 3)])

    def test_neighbourhoods(self):
        assert PATH3.neighbors(1) == [0, 2]
        assert PATH3.non_neighbors(0) == [2]
        assert PATH3.edges == [(0, 1), (1, 2)]
        assert PATH3.num_edges == 2


class TestMaxClique:
    def test_complete(self):
        assert max_clique(Graph.complete(5)) == [0, 1, 2, 3, 4]

    def test_edgeless(self):
        assert max_clique(Graph(5)) == [0]

    def test_empty_graph(self):
        assert max_clique(Graph(0)) == []

    def test_petersen(self):
        assert brute_force_clique_number(petersen()) == 2
        assert len(max_clique(petersen())) == 2

    def test_lexicographically_smallest(self):
        g = Graph(5, [(3, 4), (1, 2), (0, 4)])
        assert max_clique(g) == [0, 4]

    def test_matches_brute_force(self):
        rng = random.Random(1)
        for _ in range(300):
            n = rng.randint(0, 10)
            g = random_graph(rng, n, rng.random())
            best = max_clique(g)
            assert g.is_clique(best)
            assert len(best) == clique_number(g) == brute_force_clique_number(g)
            cliques = [list(c) for c in combinations(range(n), len(best)) if g.is_clique(c)]
            assert best == min(cliques)


class TestSubelectionIsomorphism:
    def test_small_pair(self):
        w = subelection_isomorphism(SMALL_E, SMALL_F)
        assert w is not None
        assert 3 not in w.sigma.right  # w is dropped
        assert verify_witness(SMALL_E, SMALL_F, w, Variant.SUBISO)

    def test_identity(self):
        w = subelection_isomorphism(SMALL_E, SMALL_E)
        assert w is not None and w.value == 9

    def test_triangle_plus_isolated_vertex(self):
        g = Graph(4, [(0, 1), (0, 2), (1, 2)])
        e_k, e_g = clique_to_subiso_instance(g, 3)
        assert subelection_isomorphism(e_k, e_g) is not None

    def test_voter_matching_given(self):
        pi = VoterMatching({0: 0, 1: 1, 2: 2})
        assert subelection_isomorphism(SMALL_E, SMALL_F, MatchingCase(None, pi)) is not None
        # the swapped matching also works: a->y, b->w, c->z
        pi = VoterMatching({0: 1, 1: 0, 2: 2})
        assert subelection_isomorphism(SMALL_E, SMALL_F, MatchingCase(None, pi)) is not None
        e1 = Election(2, [(0, 1), (1, 0)])
        e2 = Election(3, [(0, 1, 2), (0, 1, 2)])
        identity = MatchingCase(None, VoterMatching.identity(2))
        assert subelection_isomorphism(e1, e2, identity) is None
        assert subelection_isomorphism(e1, e2) is None

    def test_too_large(self):
        assert subelection_isomorphism(SMALL_F, SMALL_E) is None


class TestCandSubelectionIsomorphism:
    def test_small_pair(self):
        w = cand_subelection_isomorphism(SMALL_E, SMALL_F)
        assert w is not None and verify_witness(SMALL_E, SMALL_F, w, Variant.CAND_SUBISO)

    def test_identity(self):
        assert cand_subelection_isomorphism(SMALL_F, SMALL_F) is not None

    def test_reversed_pairs(self):
        e1 = Election(3, [(0, 1, 2), (0, 1, 2)])
        e2 = Election(3, [(0, 1, 2), (2, 1, 0)])
        assert cand_subelection_isomorphism(e1, e2) is None

    def test_voter_count_mismatch(self):
        assert cand_subelection_isomorphism(Election(3, [(0, 1, 2)]), SMALL_F) is None

    @settings(deadline=None, max_examples=100)
    @given(st.integers(1, 4), st.integers(1, 4), st.randoms(use_true_random=False))
    def test_planted_instances(self, m, n, rng):
        e2 = random_election(rng, m + rng.randint(0, 2), n)
        e1 = random_relabel(rng, restrict_to_candidates(e2, rng.sample(range(e2.m), m))[0])
        w = cand_subelection_isomorphism(e1, e2)
        assert w is not None and verify_witness(e1, e2, w, Variant.CAND_SUBISO)


class TestConflictGraph:
    def test_identity_is_complete(self):
        g = build_conflict_graph(SMALL_F, SMALL_F, *identity_case(SMALL_F))
        assert g.num_edges == 6

    def test_opposite_pair_removed(self):
        e1, e2 = Election(3, [(0, 1, 2)]), Election(3, [(1, 0, 2)])
        g = build_conflict_graph(e1, e2, *identity_case(e1))
        assert not g.has_edge(0, 1)
        assert g.has_edge(0, 2) and g.has_edge(1, 2)

    def test_path_gadget(self):
        g = build_conflict_graph(*clique_to_common_cand_instance(PATH3))
        assert len(max_clique(g)) == 2

    def test_partial_matching_rejected(self):
        with pytest.raises(InvalidArgumentError):
            build_conflict_graph(SMALL_E, SMALL_E, CandidateMatching({0: 0}), VoterMatching.identity(3))


class TestCommonCandBoth:
    def test_identity(self):
        w = max_common_cand_subelection_both(SMALL_F, SMALL_F, *identity_case(SMALL_F))
        assert w.value == 4

    def test_triangle(self):
        assert max_common_cand_subelection_both(*clique_to_common_cand_instance(Graph.complete(3))).value == 3

    def test_path(self):
        instance = clique_to_common_cand_instance(PATH3)
        w = max_common_cand_subelection_both(*instance)
        assert w.value == 2
        assert verify_witness(instance[0], instance[1], w, Variant.MAX_COMMON_CAND, MatchingCase(*instance[2:]))

    def test_xp_decision(self):
        instance = clique_to_common_cand_instance(PATH3)
        assert common_cand_both_xp(*instance, 2) is not None
        assert common_cand_both_xp(*instance, 3) is None

    def test_approx_examples(self):
        instance = clique_to_common_cand_instance(PATH3)
        assert approx_common_cand_both(*instance, 1).value == 1
        assert approx_common_cand_both(*instance, 2).value == 2
        full = approx_common_cand_both(SMALL_F, SMALL_F, *identity_case(SMALL_F), 4)
        assert full.value == 4
        with pytest.raises(InvalidArgumentError):
            approx_common_cand_both(*instance, 0)

    def test_against_brute_force(self):
        rng = random.Random(7)
        for _ in range(150):
            m, n = rng.randint(1, 6), rng.randint(1, 5)
            e1, e2 = random_election(rng, m, n), random_election(rng, m, n)
            sigma = CandidateMatching(zip(range(m), rng.sample(range(m), m)))
            pi = VoterMatching(zip(range(n), rng.sample(range(n), n)))
            case = MatchingCase(sigma, pi)
            opt = brute_force_max_common(e1, e2, "cand", case)
            w = max_common_cand_subelection_both(e1, e2, sigma, pi)
            assert w.value == opt
            assert verify_witness(e1, e2, w, Variant.MAX_COMMON_CAND, case)
            for c in range(1, m + 1):
                a = approx_common_cand_both(e1, e2, sigma, pi, c)
                assert a.value == min(c, opt)
                assert verify_witness(e1, e2, a, Variant.MAX_COMMON_CAND, case)
            assert common_cand_both_xp(e1, e2, sigma, pi, opt) is not None
            assert common_cand_both_xp(e1, e2, sigma, pi, opt + 1) is None


class TestBruteForce:
    def test_partial_candidate_matching(self):
        # sigma(a) = x, sigma(b) = w
        case = MatchingCase(CandidateMatching({0: 0, 1: 3}))
        assert brute_force_max_common(SMALL_E, SMALL_F, "general", case) == 4

    def test_identity_case(self):
        case = MatchingCase(*identity_case(SMALL_E))
        assert brute_force_max_common(SMALL_E, SMALL_E, "general", case) == 9

    def test_small_pair_without_matchings(self):
        assert brute_force_max_common(SMALL_E, SMALL_F) == 9
        assert brute_force_max_common(SMALL_E, SMALL_F, "cand") == 3
        assert brute_force_max_common(SMALL_E, SMALL_F, "voter") == 0

    def test_limits(self):
        big = Election(5, [tuple(range(5))])
        with pytest.raises(SizeLimitError, match="4 candidates"):
            brute_force_max_common(big, big)
        assert BRUTE_FORCE_LIMITS
        with pytest.raises(InvalidArgumentError):
            brute_force_max_common(SMALL_E, SMALL_E, "nonsense")

    @settings(deadline=None, max_examples=80)
    @given(st.sampled_from(["none", "voter"]), st.integers(1, 4), st.integers(1, 4), st.randoms(use_true_random=False))
    def test_xp_decisions_match_brute_force(self, kind, m2, n2, rng):
        e2 = random_election(rng, m2, n2, pool=2)
        m1, n1 = rng.randint(1, m2), rng.randint(1, n2)
        e1 = random_election(rng, m1, n1, pool=2)
        case = random_case(rng, kind, e1, e2, total_left=True)
        w = subelection_isomorphism(e1, e2, case)
        assert (w is not None) == (brute_force_max_common(e1, e2, "general", case) == m1 * n1)
        if w is not None:
            assert verify_witness(e1, e2, w, Variant.SUBISO, case)
        if n1 == n2:
            w = cand_subelection_isomorphism(e1, e2, case)
            assert (w is not None) == (brute_force_max_common(e1, e2, "cand", case) == m1)
