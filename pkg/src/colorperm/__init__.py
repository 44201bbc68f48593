"""colorperm: exact enumeration and formula verification for multi-colored
permutation groups (direct products of cyclic groups wreathed with the
symmetric group)."""

from .core import (
    ColoredSymbol,
    GroupElement,
    Signature,
    apply,
    check_presentation,
    compare_symbols,
    format_element,
    generators,
    identity,
    inverse,
    make_element,
    multiply,
    parse_element,
    presentation_failures,
)
from .enumeration import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    ClassLabel,
    classify_thm1,
    classify_thm2,
    element_rank,
    element_unrank,
    enumerate_derangements,
    enumerate_group,
    enumerate_involutions,
    phi_dhat,
    phi_killing,
    psi_reduce,
)
from .formulas import (
    FORMULA_IDS,
    K_of_q,
    W_partition,
    corollary_exc_count,
    corollary_fix_excA,
    epsilon,
    involution_explicit,
    involution_recurrence,
    mu,
    oracle_polynomial,
    thm1_closed,
    thm1_recurrence,
    thm2_closed_corrected,
    thm2_closed_printed,
    thm2_recurrence,
)
from .harness import VerificationReport, default_grid, verify
from .poly import MultiPolynomial, q_bracket
from .statistics import (
    StatisticsRecord,
    csum_p,
    cyc,
    exc_A,
    exc_definitional,
    exc_via_proposition,
    fix,
    stats,
)

__version__ = "0.1.0"
