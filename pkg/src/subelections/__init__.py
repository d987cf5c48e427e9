"""Election isomorphism, subelection isomorphism and maximum common
subelection solvers, with statistical-culture samplers and experiments."""

from .core import (
    NO_MATCHING,
    CandidateMatching,
    CaseKind,
    Election,
    InvalidArgumentError,
    IsoWitness,
    MatchingCase,
    SizeLimitError,
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
from .iso import (
    derive_candidate_bijection,
    election_isomorphism,
    max_common_voter_subelection,
    subelection_isomorphism_given_cand_matching,
    voter_subelection_isomorphism,
)

__version__ = "0.1.0"
