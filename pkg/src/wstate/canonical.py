"""Canonical form, marginal invariants, and local-unitary equivalence.

Every state in scope is an invertible-local-operator image of the n-party
single-excitation superposition. Such a state is locally-unitarily
equivalent to a unique representative

    sqrt(u)|0...0> + sum_k sqrt(c_k)|party k excited>

with all c_k > 0, u >= 0 and u + sum c_k = 1. The per-party marginal
determinants det rho_k = c_k * sum_{j != k} c_j are a complete set of
invariants: two states are LU-equivalent iff their determinant profiles
match party by party.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import (
    ArityMismatch,
    DegenerateState,
    InvalidArity,
    NonPositiveDeterminant,
    NotExcitationForm,
    NumericalViolation,
    SingularOperator,
)
from .numerics import qr_2x2
from .states import (
    LocalOperator,
    PureState,
    apply_local,
    assemble_excitation_state,
    as_operator,
    reduced_density,
    weight1_index,
)


@dataclass(frozen=True)
class WCanonical:
    """The unique canonical coefficient vector (u; c_1..c_n)."""

    n: int
    u: float
    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        tol = config.TOLERANCES
        if self.n < 3:
            raise InvalidArity(f"canonical form needs n >= 3 parties, got {self.n}")
        c = np.asarray(self.c, dtype=np.float64).reshape(-1).copy()
        if c.size != self.n:
            raise InvalidArity(f"expected {self.n} excitation weights, got {c.size}")
        if np.any(c <= 0.0):
            raise DegenerateState(f"excitation weights must be positive, got {c.tolist()}")
        if self.u < 0.0:
            raise NumericalViolation(f"u = {self.u!r} < 0")
        total = self.u + float(c.sum())
        if abs(total - 1.0) > tol.norm_atol:
            raise NumericalViolation(f"u + sum(c) = {total!r} != 1")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def to_state(self) -> PureState:
        """Dense amplitude vector sqrt(u)|0..0> + sum sqrt(c_k)|e_k>."""
        return assemble_excitation_state(math.sqrt(self.u), np.sqrt(self.c))

    def as_vector(self) -> np.ndarray:
        """(u, c_1..c_n) as one array, convenient for max-norm comparisons."""
        return np.concatenate(([self.u], self.c))


@dataclass(frozen=True)
class SloccForm:
    """A state given as per-party invertible 2x2 factors applied to the
    equal-weight single-excitation state."""

    n: int
    ops: tuple[LocalOperator, ...]

    def __post_init__(self):
        ops = tuple(as_operator(op) for op in self.ops)
        if len(ops) != self.n:
            raise InvalidArity(f"expected {self.n} operators, got {len(ops)}")
        for k, op in enumerate(ops, start=1):
            if op.is_singular():
                raise SingularOperator(f"operator for party {k} is singular")
        object.__setattr__(self, "ops", ops)


@dataclass(frozen=True)
class WitnessLU:
    """Per-party unitaries certifying an LU equivalence."""

    ops: tuple[LocalOperator, ...]

    def __post_init__(self):
        ops = tuple(as_operator(op) for op in self.ops)
        for k, op in enumerate(ops, start=1):
            if not op.is_unitary():
                raise NumericalViolation(f"witness entry for party {k} is not unitary")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def identities(cls, n: int) -> "WitnessLU":
        return cls(tuple(LocalOperator.identity() for _ in range(n)))

    def apply_to(self, state: PureState) -> PureState:
        return apply_local(state, self.ops)


@dataclass(frozen=True)
class InvariantProfile:
    """Per-party marginal determinants det rho_k; strictly positive
    throughout the family in scope."""

    n: int
    dets: np.ndarray = field(repr=False)

    def __post_init__(self):
        tol = config.TOLERANCES
        dets = np.asarray(self.dets, dtype=np.float64).reshape(-1).copy()
        if dets.size != self.n:
            raise InvalidArity(f"expected {self.n} determinants, got {dets.size}")
        if np.any(dets <= tol.zero_amplitude):
            raise NonPositiveDeterminant(
                f"marginal determinants must be strictly positive, got {dets.tolist()}"
            )
        if np.any(dets > 0.25 + tol.target_slack):
            raise NumericalViolation(f"marginal determinant above 1/4: {dets.tolist()}")
        dets.setflags(write=False)
        object.__setattr__(self, "dets", dets)


def _canonical_from_single_excitation(amp0: complex, amps: np.ndarray):
    """Coefficients and phase gauge for a normalized single-excitation
    amplitude vector (amp0 on |0..0>, amps[k-1] on party k's excitation).

    Returns (WCanonical, diagonal unitaries) where applying the diagonals
    to the canonical state reproduces the input amplitudes exactly. The
    zero-amplitude gauge freedom (amp0 = 0) is fixed by zero phases.
    """
    tol = config.TOLERANCES
    n = amps.size
    u = abs(amp0) ** 2
    c = np.abs(amps) ** 2
    total = u + float(c.sum())
    u /= total
    c = c / total
    theta = 0.0 if abs(amp0) <= tol.zero_amplitude else cmath.phase(amp0) / n
    diagonals = []
    for k in range(n):
        phi = cmath.phase(amps[k]) - (n - 1) * theta
        diagonals.append(
            LocalOperator([[cmath.rect(1.0, theta), 0.0], [0.0, cmath.rect(1.0, phi)]])
        )
    return WCanonical(n=n, u=u, c=c), diagonals


def canonicalize_excitation(state: PureState) -> tuple[WCanonical, WitnessLU]:
    """Canonical form of a state supported on Hamming weight <= 1.

    The witness is a vector of diagonal unitaries mapping the canonical
    state back to the input (exactly, not merely up to global phase).
    """
    tol = config.TOLERANCES
    n = state.n
    if n < 3:
        raise InvalidArity(f"need n >= 3 parties, got {n}")
    amps = state.amplitudes
    excitation_indices = [weight1_index(n, k) for k in range(1, n + 1)]
    allowed = {0, *excitation_indices}
    support = np.nonzero(np.abs(amps) > tol.zero_amplitude)[0]
    for idx in support:
        if int(idx) not in allowed:
            raise NotExcitationForm(
                f"amplitude {amps[idx]!r} at basis index {int(idx)} has "
                "Hamming weight > 1"
            )
    d = amps[excitation_indices]
    if np.any(np.abs(d) <= tol.zero_amplitude):
        raise DegenerateState("some single-excitation amplitude vanishes")
    w, diagonals = _canonical_from_single_excitation(complex(amps[0]), d)
    return w, WitnessLU(tuple(diagonals))


def canonicalize_slocc(form: SloccForm) -> tuple[WCanonical, WitnessLU]:
    """Canonical form of (A_1 x ... x A_n)|W_n> from the factors alone.

    Each factor splits as unitary times upper triangular; with
    B_k = [[p_k, q_k], [0, r_k]] the triangular image stays in the
    single-excitation span with

        d_0 = (prod_j p_j / sqrt(n)) * sum_k q_k / p_k
        d_k = (r_k / sqrt(n)) * prod_{j != k} p_j,

    so coefficients come out in closed form without ever materializing a
    2^n vector. The witness composes the per-party unitary factors with
    the diagonal phase gauge and maps the canonical state to the
    normalized image of the input factors.
    """
    tol = config.TOLERANCES
    n = form.n
    if n < 3:
        raise InvalidArity(f"need n >= 3 parties, got {n}")
    factors = [qr_2x2(op) for op in form.ops]
    p = np.array([f.upper.entries[0, 0].real for f in factors])
    q = np.array([f.upper.entries[0, 1] for f in factors])
    r = np.array([f.upper.entries[1, 1].real for f in factors])
    prod_p = float(np.prod(p))
    sqrt_n = math.sqrt(n)
    d0 = complex(prod_p / sqrt_n * np.sum(q / p))
    d = (r / sqrt_n) * (prod_p / p)
    scale = math.sqrt(abs(d0) ** 2 + float(np.sum(d**2)))
    if np.any(d <= tol.zero_amplitude * scale):
        raise DegenerateState(
            "a single-excitation amplitude of the triangular image vanishes; "
            "the state is not a genuine n-party member of this family"
        )
    w, diagonals = _canonical_from_single_excitation(d0 / scale, d / scale)
    witness = tuple(f.unitary @ dg for f, dg in zip(factors, diagonals))
    return w, WitnessLU(witness)


def slocc_form_from_canonical(w: WCanonical) -> SloccForm:
    """Upper-triangular factors whose image of |W_n> is w's state.

    With B_k = [[1, sqrt(u/n)], [0, sqrt(n c_k)]] the closed-form image
    coefficients are exactly (sqrt(u); sqrt(c_1)..sqrt(c_n)).
    """
    off = math.sqrt(w.u / w.n)
    ops = tuple(
        LocalOperator([[1.0, off], [0.0, math.sqrt(w.n * ck)]]) for ck in w.c
    )
    return SloccForm(n=w.n, ops=ops)


def invariant_profile(w: WCanonical) -> InvariantProfile:
    """det rho_k = c_k * sum_{j != k} c_j, in closed form."""
    s = float(w.c.sum())
    return InvariantProfile(n=w.n, dets=w.c * (s - w.c))


def invariant_profile_from_state(state: PureState) -> InvariantProfile:
    """Marginal determinants of a dense state via partial traces.

    Rejects profiles with a non-positive determinant (product or
    GHZ-like marginal structure) as outside this family.
    """
    if state.n < 3:
        raise InvalidArity(f"need n >= 3 parties, got {state.n}")
    dets = np.array([reduced_density(state, k).det for k in range(1, state.n + 1)])
    return InvariantProfile(n=state.n, dets=dets)


def lu_equivalent(
    a: WCanonical,
    b: WCanonical,
    tol: float | None = None,
    witness_a: WitnessLU | None = None,
    witness_b: WitnessLU | None = None,
) -> tuple[bool, WitnessLU | None]:
    """Decide LU equivalence by party-wise comparison of the profiles.

    No party permutation is considered: rho_k must match sigma_k index by
    index. When the profiles match, the canonical coefficient vectors
    coincide, and the returned witness maps b's state to a's state; pass
    the canonicalization witnesses of the original states to obtain a
    witness between those states rather than between the canonical forms.
    """
    if a.n != b.n:
        raise ArityMismatch(f"party counts differ: {a.n} vs {b.n}")
    tol = config.TOLERANCES.equivalence if tol is None else tol
    gap = float(np.max(np.abs(invariant_profile(a).dets - invariant_profile(b).dets)))
    if gap > tol:
        return False, None
    wa = witness_a if witness_a is not None else WitnessLU.identities(a.n)
    wb = witness_b if witness_b is not None else WitnessLU.identities(b.n)
    combined = tuple(ua @ ub.dagger() for ua, ub in zip(wa.ops, wb.ops))
    return True, WitnessLU(combined)


def profile_gap(a: WCanonical, b: WCanonical) -> float:
    """Largest party-wise difference between the two profiles."""
    if a.n != b.n:
        raise ArityMismatch(f"party counts differ: {a.n} vs {b.n}")
    return float(np.max(np.abs(invariant_profile(a).dets - invariant_profile(b).dets)))
