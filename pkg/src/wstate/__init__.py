"""Canonical forms, marginal invariants, and reconstruction for the
single-excitation (W) class of multiqubit pure states.

The library decides local-unitary equivalence of states in this class
through their per-party marginal determinants, produces explicit unitary
witnesses, and inverts the determinant map: from the n marginal
determinants it recovers the unique canonical coefficient vector.
"""

from . import config
from ._backend import BACKEND
from .canonical import (
    InvariantProfile,
    SloccForm,
    WCanonical,
    WitnessLU,
    canonicalize_excitation,
    canonicalize_slocc,
    invariant_profile,
    invariant_profile_from_state,
    lu_equivalent,
    profile_gap,
    slocc_form_from_canonical,
)
from .errors import (
    ArityMismatch,
    DegenerateState,
    DomainError,
    InvalidArity,
    InvalidParty,
    InvalidPivot,
    NoBracket,
    NonPositiveDeterminant,
    NoSolution,
    NotExcitationForm,
    NumericalViolation,
    SingularImage,
    SingularOperator,
    ToleranceFailure,
    ValidationFailure,
    WStateError,
    ZeroState,
)
from .numerics import (
    RootReport,
    TriangularFactorization,
    bisect_decreasing,
    qr_2x2,
    scan_sign_changes,
)
from .oracle import (
    TrialReport,
    random_canonical,
    random_invertible_2,
    random_unitary_2,
    verify_unique_reconstruction,
    verify_lu_invariance,
)
from .reconstruction import (
    ReconstructionTargets,
    TotalWeightSolution,
    coefficients_from_total,
    f_eval,
    forward_residual,
    g_eval,
    reconstruct,
    solve_total_weight,
    uniqueness_scan,
)
from .states import (
    LocalOperator,
    PureState,
    SingleQubitDensity,
    apply_local,
    assemble_excitation_state,
    build_w_state,
    reduced_density,
    spectrum_and_det,
    weight1_index,
)

__version__ = "0.1.0"
