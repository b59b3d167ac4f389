"""Exact finite-n averages over the classical orthogonal ensembles and
their large-n asymptotics.

The package computes multiplicative eigenvalue averages through two
independent exact routes (structured determinants and the unit-circle
orthogonal-polynomial recursion), evaluates the closed-form large-n
predictions for smooth, singular and arc-supported symbols, and checks
the two against each other, against exact finite-n identities, and
against Monte Carlo sampling of the underlying matrix ensembles.
"""

from .symbols import (
    ALL_LABELS,
    EnsembleLabel,
    FHSingularity,
    FHSymbol,
    GapSymbol,
    LaurentPotential,
    SymbolError,
    ZERO_POTENTIAL,
    fh_of_gap,
    load_symbol,
    symbol_from_json,
    symbol_to_json,
)
from .moments import MomentSequence, MomentToleranceError, compute_moments
from .linalg import LogValue, th_det, toeplitz_det
from .opuc import OpucState, PrecisionExhausted, szego_recursion, toeplitz_logdet_szego
from .ensembles import (
    ExactAverage,
    IdentityReport,
    RadicandError,
    cbe_generating,
    check_identities,
    exact_average_opuc,
    exact_average_th,
    gap_generating,
    occupancy_distribution,
)
from .asym import (
    AsymPrediction,
    cbe_gap0,
    cbe_gap_s,
    cor_gap0,
    cor_gap_envelope,
    cor_gap_s,
    cue_fh_asym,
    cue_gap_asym,
    delta_values,
    fh_Cn,
    fh_E_const,
    fh_F_envelope,
    gap_constants,
    orth_fh_asym,
    orth_fh_envelope,
    orth_gap_asym,
    orth_gap_explicit,
    phi_fh_asym,
    phi_gap_asym,
    szego_limit,
    tilde_v_coeffs,
)
from .special import abs2_barnes_g, constants, log_barnes_g, log_gamma, zeta_prime_m1
from .mc import (
    CountingStats,
    EigenangleSample,
    RigidityReport,
    counting_stats,
    empirical_gap,
    occupancy_counts,
    rigidity_experiment,
    sample_ensemble,
    sample_haar_orthogonal,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
