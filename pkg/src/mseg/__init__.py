"""Exact-arithmetic toolkit for multisegment combinatorics.

Decides the dense-orbit conditions GLS / LC / IG on multisegments by
randomized exact rank tests, implements the end-stripping involution,
crossing-free matchings and point derivatives, and ships property suites
that stress the consistency statements relating all of these.
"""

from .conditions import (
    CoeffVector,
    Verdict,
    check_gls,
    check_ig,
    check_lc,
    gls_matrix,
    lc_matrix,
    li_for_good,
)
from .errors import (
    EmptyMultisegmentError,
    EmptySegmentError,
    InvalidMatchingError,
    MsegError,
    NotApplicableError,
    ParseError,
    PreconditionError,
    SupportMismatchError,
    TooLargeError,
)
from .harness import (
    GenParams,
    PropertyReport,
    SUITES,
    gen_ladder,
    gen_ms,
    prop_3ms,
    prop_gedelta,
    prop_mm_minus,
    prop_rhoext_geom,
    prop_splitdisj,
    prop_sumofseg_geom,
    replay_violation,
    suite_invariances,
)
from .linalg import (
    KERNEL,
    MERSENNE61,
    IntMatrix,
    RankConfig,
    rank_exact,
    rank_mod_p,
    sample_coeffs,
)
from .segments import (
    CuspidalPoint,
    Multisegment,
    Segment,
    is_ladder,
    linked,
    max_end,
    ms_add,
    ms_dual,
    ms_filter,
    ms_new,
    precedes,
    seg_new,
    sli_sufficient,
    split_mx,
    supp,
    surgery,
    total_cmp,
)
from .zelevinsky import (
    DerivativeResult,
    Matching,
    PairSet,
    best_matching,
    derivative,
    enumerate_maximal_matchings,
    is_maximal_matching,
    leading_indices,
    make_matching,
    matching_equivalent,
    mw_dual,
    mw_frontier,
    mw_step,
    pairset_x,
    pairset_x_cross,
    pairset_y,
    pairset_y_cross,
    rho_frontier,
    rho_sets,
    soc_cuspidal,
)

__version__ = "0.1.0"
