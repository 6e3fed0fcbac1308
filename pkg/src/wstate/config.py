"""Central tolerance configuration.

Every numerical cutoff used by the library lives in one frozen record so
property tests have a single knob. Functions read the module-level
``TOLERANCES`` instance at call time; tests may swap it via
``set_tolerances`` and restore with ``reset_tolerances``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # state / operator validation
    norm_atol: float = 1e-12         # squared-norm deviation allowed after normalization
    psd_slack: float = 1e-12         # eigenvalue negativity slack for density matrices
    hermiticity_atol: float = 1e-12
    unitary_atol: float = 1e-10      # entrywise |U U† - I|
    singular_det: float = 1e-12      # |det| floor for invertible 2x2 factors
    zero_amplitude: float = 1e-12    # amplitude cutoff (degeneracy, excitation support)
    factor_atol: float = 1e-12       # QR reconstruction error, entrywise

    # comparisons between independent computation paths
    equality: float = 1e-10          # closed form vs dense partial trace
    equivalence: float = 1e-9        # LU decision threshold and witness verification

    # root finding / reconstruction
    bisect_width: float = 1e-12      # default bracket-width target
    bisect_max_iter: int = 200
    root_accept: float = 1e-10       # |g| acceptance for non-sign-change candidates
    root_residual: float = 1e-8      # above this the solver reports ToleranceFailure
    coincidence: float = 1e-9        # |r - s| when both branch roots exist
    forward_check: float = 1e-9      # reconstructed profile must reproduce targets
    dedup: float = 1e-6              # max-norm distance merging duplicate solutions
    disc_clamp: float = 1e-12        # y^2 - x_k values in [-clamp, 0) are clamped to 0
    target_slack: float = 1e-12      # upper slack on x_k <= 1 and det <= 1/4
    pivot_tie: float = 1e-12         # targets within this of the max count as maximal

    # dense-state guard
    max_dense_qubits: int = 24


TOLERANCES = Tolerances()

DEFAULT_GRID_POINTS = 10_000


def set_tolerances(**overrides) -> Tolerances:
    """Replace fields of the active tolerance record; returns the new record."""
    global TOLERANCES
    TOLERANCES = replace(TOLERANCES, **overrides)
    return TOLERANCES


def reset_tolerances() -> Tolerances:
    global TOLERANCES
    TOLERANCES = Tolerances()
    return TOLERANCES
