"""Consensus and location functions on the n-dimensional hypercube.

Center, median, mean, l_p and anti-median functions over approval-ballot
profiles, with a closed-form majority-rule median, bit-parallel distance
computation, a brute-force oracle, and mechanical axiom checking.
"""

from .cube import (
    DimensionMismatchError,
    GuardExceededError,
    Vertex,
    enumerate_vertices,
    hamming,
    leq,
    norm,
    ones,
    unit_vertex,
    xor,
    zero,
)
from .profiles import (
    ColumnStats,
    Profile,
    char_p,
    column_sums,
    concat,
    eccentricity,
    lp_status,
    profile_norm,
    square_status,
    status,
    translate,
)
from .consensus import (
    ConsensusOutcome,
    TieSet,
    anti_median,
    center,
    condorcet_ties,
    lp_consensus,
    maj,
    mean,
    median,
    min_vertex,
)
from .axioms import (
    AxiomVerdict,
    ConsensusFunction,
    Exhaustive,
    InvariantError,
    Randomized,
    builtin,
    check_agreement,
    check_consistency,
    check_intersection_condition,
    check_maj,
    check_min,
    check_rr,
    check_translation,
    enumerate_profiles,
    oracle_argopt,
    oracle_function,
    random_profile,
    verify_theorem1,
)
from .estimators import (
    AntiMedianConsensus,
    CenterConsensus,
    LpConsensus,
    MedianConsensus,
)
from .cli import BallotFile, BallotParseError, parse_ballots

__version__ = "0.1.0"

__all__ = [
    "Vertex",
    "Profile",
    "ColumnStats",
    "ConsensusOutcome",
    "TieSet",
    "AxiomVerdict",
    "ConsensusFunction",
    "BallotFile",
    "BallotParseError",
    "DimensionMismatchError",
    "GuardExceededError",
    "InvariantError",
    "Exhaustive",
    "Randomized",
    "xor",
    "hamming",
    "norm",
    "leq",
    "zero",
    "ones",
    "unit_vertex",
    "enumerate_vertices",
    "translate",
    "concat",
    "column_sums",
    "profile_norm",
    "eccentricity",
    "status",
    "square_status",
    "lp_status",
    "char_p",
    "maj",
    "min_vertex",
    "condorcet_ties",
    "median",
    "anti_median",
    "center",
    "lp_consensus",
    "mean",
    "builtin",
    "oracle_argopt",
    "oracle_function",
    "enumerate_profiles",
    "random_profile",
    "check_translation",
    "check_agreement",
    "verify_theorem1",
    "check_consistency",
    "check_maj",
    "check_min",
    "check_rr",
    "check_intersection_condition",
    "MedianConsensus",
    "AntiMedianConsensus",
    "CenterConsensus",
    "LpConsensus",
    "parse_ballots",
]
