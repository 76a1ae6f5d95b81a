"""Capital-requirement risk measures with general eligible assets on finite
probability spaces.

The package evaluates requirements of the form

    rho(X) = inf{m : X + (m / S0) * S1 acceptable},

where the eligible asset S has price S0 > 0 and strictly positive payoff S1
and acceptability is defined through value-at-risk, expected shortfall,
distortion mixtures, a plain expectation floor, or a user-supplied
decreasing functional.  Alongside the solver it ships exact comonotonicity
tests and executable checkers for the structural results that tie
comonotonic additivity of the requirement to properties of the acceptance
set and of the asset: additivity survives a risky asset only when the set
absorbs the fully leveraged payoff, and never when the set is pointed.
"""

__version__ = "0.1.0"

from .spaces import (
    FiniteSpace,
    RandVar,
    SortedProfile,
    SpaceMismatchError,
    essential_infimum,
    expectation,
    same_distribution,
    upper_quantile,
)
from .measures import (
    DistortionWeights,
    Level,
    distortion,
    es,
    es_boundary,
    es_choquet_oracle,
    var,
)
from .acceptance import (
    AcceptanceSpec,
    accepts,
    check_cone,
    check_convex,
    check_monotone,
    find_risk_invariant,
)
from .engine import (
    BracketExpansionError,
    EligibleAsset,
    RiskQuote,
    cash_asset,
    change_numeraire,
    discounted_acceptance,
    numeraire_identity_check,
    rho,
    rho_cash,
    s_additivity_check,
)
from .comonotone import (
    ComonoPair,
    additivity_on_S_comonotone,
    additivity_on_comonotone,
    comono_preservation_under_numeraire,
    generate_comonotone_pair,
    is_comonotone,
)
from .reporting import CheckReport
from .theorems import (
    REFERENCE_VALUES,
    TheoremVerdict,
    check_corollary_convex,
    check_lemma_equality,
    check_cash_reduction_identity,
    check_theorem_condition_b,
    check_var_condition_b,
    check_var_necessary_condition,
    find_additivity_violation,
    run_replication_suite,
)

__all__ = [
    "__version__",
    "FiniteSpace",
    "RandVar",
    "SortedProfile",
    "SpaceMismatchError",
    "expectation",
    "upper_quantile",
    "essential_infimum",
    "same_distribution",
    "Level",
    "DistortionWeights",
    "var",
    "es",
    "es_boundary",
    "distortion",
    "es_choquet_oracle",
    "AcceptanceSpec",
    "accepts",
    "check_monotone",
    "check_cone",
    "check_convex",
    "find_risk_invariant",
    "EligibleAsset",
    "RiskQuote",
    "BracketExpansionError",
    "cash_asset",
    "rho",
    "rho_cash",
    "s_additivity_check",
    "change_numeraire",
    "discounted_acceptance",
    "numeraire_identity_check",
    "ComonoPair",
    "is_comonotone",
    "generate_comonotone_pair",
    "additivity_on_comonotone",
    "additivity_on_S_comonotone",
    "comono_preservation_under_numeraire",
    "CheckReport",
    "TheoremVerdict",
    "check_theorem_condition_b",
    "check_corollary_convex",
    "check_cash_reduction_identity",
    "check_lemma_equality",
    "check_var_necessary_condition",
    "check_var_condition_b",
    "find_additivity_violation",
    "run_replication_suite",
    "REFERENCE_VALUES",
]
