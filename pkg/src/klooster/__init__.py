"""Kloosterman sums over odd prime-power moduli and the machinery around
them: divisor sums in arithmetic progressions with exact error terms,
completion identities, Weyl differencing, subset-sum profiles, square-root
phase functions, and the closed-form parameter calculator."""

from .divisor import (
    ErrorRecord,
    ScanResult,
    TauTable,
    error_term,
    hyperbola_total,
    main_term,
    progression_divisor_sum,
    sup_error_scan,
    tau_sieve,
)
from .kloosterman import (
    EvalMethod,
    KloostermanQuery,
    KloostermanValue,
    ZeroReason,
    decomposition_sum,
    kl_brute,
    kl_closed,
    kl_row_dft,
    stationary_decomposition,
    vanishing_class,
    weil_ratio,
)
from .params import TheoremParams, theorem_parameters
from .phases import (
    ClassSumResult,
    MixedCharResult,
    PhaseSpec,
    complete_class_sum,
    mixed_character_sum,
    phase_eval,
)
from .residue import (
    EpsilonFactor,
    PAdicValuation,
    PrimePowerModulus,
    RootPair,
    epsilon_factor,
    jacobi_symbol,
    mod_inverse,
    p_adic_valuation,
    sqrt_mod_prime,
    sqrt_mod_prime_power,
    unit_circle,
)
from .weighted import (
    CompletionCheck,
    Interval,
    WeightedSumSpec,
    completion_identity_check,
    geometric_window,
    kappa,
    thm2_ratio,
    weighted_sum,
)
from .weyl import (
    NearCollisionResult,
    ParityReport,
    SubsetProfile,
    WeylDepthResult,
    WeylL1Result,
    near_collision_count,
    parity_forces_divisibility,
    subset_profile,
    weyl_depth_ratio,
    weyl_l1_inequality,
)

__version__ = "0.1.0"

__all__ = [
    "EpsilonFactor", "PAdicValuation", "PrimePowerModulus", "RootPair",
    "mod_inverse", "jacobi_symbol", "sqrt_mod_prime", "sqrt_mod_prime_power",
    "p_adic_valuation", "epsilon_factor", "unit_circle",
    "EvalMethod", "ZeroReason", "KloostermanQuery", "KloostermanValue",
    "kl_brute", "kl_closed", "kl_row_dft", "weil_ratio",
    "stationary_decomposition", "decomposition_sum", "vanishing_class",
    "TauTable", "ErrorRecord", "ScanResult", "tau_sieve", "hyperbola_total",
    "progression_divisor_sum", "main_term", "error_term", "sup_error_scan",
    "Interval", "WeightedSumSpec", "CompletionCheck", "weighted_sum",
    "thm2_ratio", "geometric_window", "completion_identity_check", "kappa",
    "SubsetProfile", "ParityReport", "NearCollisionResult", "WeylL1Result",
    "WeylDepthResult", "subset_profile", "parity_forces_divisibility",
    "near_collision_count", "weyl_l1_inequality", "weyl_depth_ratio",
    "PhaseSpec", "ClassSumResult", "MixedCharResult", "phase_eval",
    "complete_class_sum", "mixed_character_sum",
    "TheoremParams", "theorem_parameters",
]
