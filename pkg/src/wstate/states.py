"""Dense n-qubit pure states, local 2x2 operators, and single-qubit marginals.

Bit convention: party 1 is the most significant bit, so the basis index of
the state with party k excited and all others in |0> is 2**(n-k). Dense
vectors exist only for oracle-scale checks (n <= 24 by default); the
W-class fast paths elsewhere never materialize them.
"""

from __future__ import annotations

import numpy as np

from . import config
from .errors import (
    InvalidArity,
    InvalidParty,
    NumericalViolation,
    SingularImage,
    ZeroState,
)


def weight1_index(n: int, k: int) -> int:
    """Basis index of the computational state with only party k excited."""
    if not 1 <= k <= n:
        raise InvalidParty(f"party {k} out of range 1..{n}")
    return 1 << (n - k)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class PureState:
    """Normalized dense amplitude vector over n qubits.

    The constructor normalizes and keeps the pre-normalization 2-norm in
    ``original_norm`` (SLOCC images are naturally unnormalized, and callers
    such as :func:`apply_local` need the lost scale).
    """

    __slots__ = ("n", "amplitudes", "original_norm")

    def __init__(self, n: int, amplitudes):
        tol = config.TOLERANCES
        if n < 1:
            raise InvalidArity(f"need at least one party, got n={n}")
        if n > tol.max_dense_qubits:
            raise InvalidArity(
                f"n={n} exceeds the dense-state cap of {tol.max_dense_qubits} qubits"
            )
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1).copy()
        if amps.size != 2**n:
            raise InvalidArity(f"expected 2**{n} amplitudes, got {amps.size}")
        norm = float(np.linalg.norm(amps))
        if norm < tol.zero_amplitude:
            raise ZeroState("all amplitudes vanish")
        amps /= norm
        self.n = n
        self.amplitudes = _readonly(amps)
        self.original_norm = norm

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per party (party 1 = axis 0)."""
        return self.amplitudes.reshape((2,) * self.n)

    def __repr__(self) -> str:
        return f"PureState(n={self.n}, original_norm={self.original_norm:.6g})"


class LocalOperator:
    """A 2x2 complex matrix acting on a single party."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        m = np.asarray(entries, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"expected 2x2 matrix, got shape {m.shape}")
        self.entries = _readonly(m.copy())

    @classmethod
    def identity(cls) -> "LocalOperator":
        return cls(np.eye(2))

    @property
    def det(self) -> complex:
        m = self.entries
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def dagger(self) -> "LocalOperator":
        return LocalOperator(self.entries.conj().T)

    def is_unitary(self, atol: float | None = None) -> bool:
        atol = config.TOLERANCES.unitary_atol if atol is None else atol
        gram = self.entries @ self.entries.conj().T
        return bool(np.max(np.abs(gram - np.eye(2))) <= atol)

    def is_singular(self, floor: float | None = None) -> bool:
        floor = config.TOLERANCES.singular_det if floor is None else floor
        return abs(self.det) <= floor

    def __matmul__(self, other: "LocalOperator") -> "LocalOperator":
        return LocalOperator(self.entries @ other.entries)

    def __repr__(self) -> str:
        return f"LocalOperator({self.entries.tolist()})"


def as_operator(op) -> LocalOperator:
    """Coerce a LocalOperator or any 2x2 array-like into a LocalOperator."""
    return op if isinstance(op, LocalOperator) else LocalOperator(op)


class SingleQubitDensity:
    """2x2 Hermitian, trace-1, positive-semidefinite marginal."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        tol = config.TOLERANCES
        m = np.asarray(entries, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"expected 2x2 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > tol.hermiticity_atol:
            raise NumericalViolation("marginal is not Hermitian")
        if abs(m.trace().real - 1.0) > tol.norm_atol:
            raise NumericalViolation(f"marginal trace {m.trace().real!r} != 1")
        eigs = np.linalg.eigvalsh(m)
        if eigs[0] < -tol.psd_slack:
            raise NumericalViolation(f"marginal eigenvalue {eigs[0]!r} < 0")
        det = float(np.real(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))
        if det < -tol.psd_slack or det > 0.25 + tol.target_slack:
            raise NumericalViolation(f"marginal determinant {det!r} outside [0, 1/4]")
        self.entries = _readonly(0.5 * (m + m.conj().T))

    @property
    def det(self) -> float:
        m = self.entries
        return float(np.real(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))

    def __repr__(self) -> str:
        return f"SingleQubitDensity({self.entries.tolist()})"


def build_w_state(n: int) -> PureState:
    """Equal-amplitude superposition of all Hamming-weight-1 basis states."""
    if n < 2:
        raise InvalidArity(f"the W state needs n >= 2 parties, got {n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    for k in range(1, n + 1):
        amps[weight1_index(n, k)] = 1.0 / np.sqrt(n)
    return PureState(n, amps)


def assemble_excitation_state(d0: complex, d) -> PureState:
    """Normalized state with amplitude d0 on |0...0> and d_k on party k's
    single-excitation basis state; everything else zero."""
    d = np.asarray(d, dtype=np.complex128).reshape(-1)
    n = d.size
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = d0
    for k in range(1, n + 1):
        amps[weight1_index(n, k)] = d[k - 1]
    if np.linalg.norm(amps) < config.TOLERANCES.zero_amplitude:
        raise ZeroState("d0 and all d_k vanish")
    return PureState(n, amps)


def apply_local(state: PureState, ops) -> PureState:
    """Apply one 2x2 operator per party and renormalize.

    The returned state's ``original_norm`` is the pre-normalization norm of
    the image (the input is unit-norm, so this is the scale the operator
    product removed).
    """
    ops = [as_operator(op) for op in ops]
    if len(ops) != state.n:
        raise InvalidArity(f"need {state.n} operators, got {len(ops)}")
    t = state.tensor()
    for k, op in enumerate(ops):
        t = np.moveaxis(np.tensordot(op.entries, t, axes=(1, k)), 0, k)
    flat = t.reshape(-1)
    if np.linalg.norm(flat) < config.TOLERANCES.zero_amplitude:
        raise SingularImage("operator product annihilated the state")
    return PureState(state.n, flat)


def reduced_density(state: PureState, k: int) -> SingleQubitDensity:
    """Single-qubit marginal of party k (1-based) by partial trace."""
    if not 1 <= k <= state.n:
        raise InvalidParty(f"party {k} out of range 1..{state.n}")
    m = np.moveaxis(state.tensor(), k - 1, 0).reshape(2, -1)
    return SingleQubitDensity(m @ m.conj().T)


def spectrum_and_det(rho: SingleQubitDensity) -> tuple[float, float, float]:
    """(lambda_min, lambda_max, det) of a trace-1 2x2 marginal.

    For trace 1 the spectrum is (1 -+ sqrt(1 - 4 det))/2, so the
    determinant and the spectrum carry the same information.
    """
    tol = config.TOLERANCES
    det = rho.det
    if det > 0.25 + tol.target_slack or det < -tol.psd_slack:
        raise NumericalViolation(f"determinant {det!r} outside [0, 1/4]")
    det = min(max(det, 0.0), 0.25)
    disc = np.sqrt(1.0 - 4.0 * det)
    return (1.0 - disc) / 2.0, (1.0 + disc) / 2.0, det
