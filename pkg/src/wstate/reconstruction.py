"""Recovering canonical coefficients from marginal determinants.

The inputs are the scaled targets x_k = 4 det rho_k. Writing A for the
total excitation weight, each coefficient solves a quadratic,
a_k = (A +- sqrt(A^2 - x_k))/2, and at most one party (the pivot, which
must carry a maximal target) can take the plus sign. Consistency of the
assignment with sum a_k = A reduces to a root of one of two scalar
functions of y = A on the interval [sqrt(max x), 1]:

    f(y) = (n-2) y - sum_k sqrt(y^2 - x_k)            (all minus signs)
    g(y) = sum_{k != p} sqrt(y^2 - x_k)
           - sqrt(y^2 - x_p) - (n-2) y                (pivot p plus sign)

f is strictly decreasing, so a sign check at the interval ends settles it;
g has at most one root but no monotonicity guarantee, so it is located by
a dense grid scan. f is evaluated in the subtraction-safe difference form
above (each quotient x_k / (y + sqrt(y^2 - x_k)) rewritten as
y - sqrt(y^2 - x_k)), which is exact algebraically and stable at the
domain edge. The solution, when it exists, is unique; ``uniqueness_scan``
certifies that numerically for a given target vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend, config
from .canonical import InvariantProfile, WCanonical, invariant_profile
from .errors import (
    DegenerateState,
    DomainError,
    InvalidArity,
    InvalidPivot,
    NoSolution,
    NumericalViolation,
    ToleranceFailure,
    ValidationFailure,
)

_F, _G = 0, 1
_BRANCH_NAME = {_F: "F", _G: "G"}

# below this width the search interval is a single point numerically
_POINT_DOMAIN = 1e-14


@dataclass(frozen=True)
class ReconstructionTargets:
    """Scaled determinant targets x_k = 4 det rho_k, with 0 < x_k <= 1."""

    n: int
    x: np.ndarray = field(repr=False)

    def __post_init__(self):
        tol = config.TOLERANCES
        if self.n < 3:
            raise InvalidArity(f"reconstruction needs n >= 3 parties, got {self.n}")
        x = np.asarray(self.x, dtype=np.float64).reshape(-1).copy()
        if x.size != self.n:
            raise InvalidArity(f"expected {self.n} targets, got {x.size}")
        if np.any(x <= 0.0):
            raise NumericalViolation(f"targets must be positive, got {x.tolist()}")
        if np.any(x > 1.0 + tol.target_slack):
            raise NumericalViolation(f"targets above 1: {x.tolist()}")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @classmethod
    def from_scaled(cls, x) -> "ReconstructionTargets":
        """Targets already on the x = 4 det scale."""
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        return cls(n=x.size, x=x)

    @classmethod
    def from_dets(cls, dets) -> "ReconstructionTargets":
        """Targets given as raw determinants (at most 1/4 each)."""
        dets = np.asarray(dets, dtype=np.float64).reshape(-1)
        return cls(n=dets.size, x=4.0 * dets)

    @classmethod
    def from_profile(cls, profile: InvariantProfile) -> "ReconstructionTargets":
        return cls(n=profile.n, x=4.0 * profile.dets)

    def maximal_pivots(self) -> list[int]:
        """1-based indices of parties whose target ties the maximum."""
        tie = config.TOLERANCES.pivot_tie
        top = float(self.x.max())
        return [k + 1 for k in range(self.n) if self.x[k] >= top - tie]

    def domain(self) -> tuple[float, float]:
        """Feasible interval for the total excitation weight."""
        return min(math.sqrt(float(self.x.max())), 1.0), 1.0


@dataclass(frozen=True)
class TotalWeightSolution:
    """Root of the branch equations: the total excitation weight A."""

    A: float
    branch: str  # "F" (all minus roots) or "G" (pivot takes the plus root)
    pivot: int | None  # 1-based party carrying the plus root (G only)
    residual: float
    iterations: int


def _eval_one(t: ReconstructionTargets, branch: int, pivot0: int, y: float) -> float:
    impl = _backend.impl
    v = float(
        impl.branch_values(
            t.x, branch, pivot0, np.array([y], dtype=np.float64), config.TOLERANCES.disc_clamp
        )[0]
    )
    return v


def f_eval(y: float, t: ReconstructionTargets) -> float:
    """All-minus balance function f(y); DomainError below sqrt(max x)."""
    v = _eval_one(t, _F, 0, y)
    if math.isnan(v):
        raise DomainError(f"y={y!r} below the square-root domain of the targets")
    return v


def g_eval(y: float, t: ReconstructionTargets, pivot: int) -> float:
    """One-plus balance function g(y) for the given 1-based pivot party.

    The pivot must carry a (numerically) maximal target; a plus-sign root
    at a non-maximal party makes g negative throughout, so it is rejected
    outright.
    """
    if pivot not in t.maximal_pivots():
        raise InvalidPivot(f"party {pivot} does not carry a maximal target")
    v = _eval_one(t, _G, pivot - 1, y)
    if math.isnan(v):
        raise DomainError(f"y={y!r} below the square-root domain of the targets")
    return v


def _refine_brackets(t, branch, pivot0, brackets):
    """Bisect sign-change brackets and harvest near-zero endpoints.

    A certified sign change is accepted as a root regardless of the
    residual (the crossing is inside the final machine-width bracket);
    endpoint candidates without a crossing must sit within the acceptance
    tolerance already.
    """
    tol = config.TOLERANCES
    roots: list[tuple[float, float, int]] = []
    for (ylo, yhi, vlo, vhi) in brackets:
        if vlo * vhi < 0.0:
            sign_lo = 1 if vlo > 0.0 else -1
            root, _, _, residual, iterations, converged = _backend.impl.bisect_branch(
                t.x, branch, pivot0, ylo, yhi, sign_lo, 0.0,
                tol.bisect_max_iter, tol.disc_clamp,
            )
            if not converged:
                raise ToleranceFailure(
                    f"bisection exceeded {tol.bisect_max_iter} iterations on "
                    f"[{ylo!r}, {yhi!r}]"
                )
            roots.append((root, residual, iterations))
        else:
            if abs(vlo) <= tol.root_accept:
                roots.append((ylo, abs(vlo), 0))
            if abs(vhi) <= tol.root_accept:
                roots.append((yhi, abs(vhi), 0))
    return roots


def _merge_roots(roots, merge_tol):
    """Collapse root candidates closer than merge_tol, keeping the one
    with the smallest residual per cluster."""
    if not roots:
        return []
    roots = sorted(roots)
    merged = [roots[0]]
    for cand in roots[1:]:
        if cand[0] - merged[-1][0] <= merge_tol:
            if cand[1] < merged[-1][1]:
                merged[-1] = cand
        else:
            merged.append(cand)
    return merged


def _finish(branch: int, pivot: int | None, root: float, residual: float,
            iterations: int) -> TotalWeightSolution:
    tol = config.TOLERANCES
    if residual > tol.root_residual:
        raise ToleranceFailure(
            f"root residual {residual!r} exceeds {tol.root_residual!r}"
        )
    return TotalWeightSolution(
        A=root,
        branch=_BRANCH_NAME[branch],
        pivot=pivot,
        residual=residual,
        iterations=iterations,
    )


def solve_total_weight(
    t: ReconstructionTargets, grid_points: int = config.DEFAULT_GRID_POINTS
) -> TotalWeightSolution:
    """Find the total excitation weight solving either branch equation.

    The all-minus branch is monotone, so one sign check at the interval
    ends decides whether a root exists there; any such root is already the
    unique solution (a coexisting plus-branch root necessarily coincides
    with it at sqrt(max x)), so the plus branch is only scanned when the
    minus branch comes up empty. The plus branch has a unique root but no
    monotonicity guarantee, hence the dense grid scan. A duplicated
    plus-branch root or a residual above the reporting threshold is a
    ToleranceFailure rather than a silent pick.
    """
    tol = config.TOLERANCES
    impl = _backend.impl
    lo, hi = t.domain()
    pivot = t.maximal_pivots()[0]
    pivot0 = pivot - 1

    if hi - lo <= _POINT_DOMAIN:
        # the whole domain is one point; check both branch values there
        fv = _eval_one(t, _F, 0, hi)
        if abs(fv) <= tol.root_accept:
            return _finish(_F, None, hi, abs(fv), 0)
        gv = _eval_one(t, _G, pivot0, hi)
        if abs(gv) <= tol.root_accept:
            return _finish(_G, pivot, hi, abs(gv), 0)
        raise NoSolution(
            f"neither branch vanishes on the degenerate domain point {hi!r}"
        )

    ends = impl.branch_values(t.x, _F, 0, np.array([lo, hi]), tol.disc_clamp)
    if ends[0] >= 0.0 >= ends[1]:
        root, _, _, residual, iterations, converged = impl.bisect_branch(
            t.x, _F, 0, lo, hi, 1, 0.0, tol.bisect_max_iter, tol.disc_clamp
        )
        if not converged:
            raise ToleranceFailure(
                f"bisection exceeded {tol.bisect_max_iter} iterations"
            )
        return _finish(_F, None, root, residual, iterations)

    brackets = impl.scan_brackets(
        t.x, _G, pivot0, lo, hi, grid_points, tol.disc_clamp, tol.root_accept
    )
    candidates = _merge_roots(
        _refine_brackets(t, _G, pivot0, brackets), tol.coincidence
    )
    if len(candidates) > 1:
        raise ToleranceFailure(
            f"found {len(candidates)} distinct plus-branch roots "
            f"{[c[0] for c in candidates]}; expected at most one"
        )
    if not candidates:
        raise NoSolution(
            f"no total weight in [{lo!r}, {hi!r}] satisfies either branch equation"
        )
    root, residual, iterations = candidates[0]
    return _finish(_G, pivot, root, residual, iterations)


def coefficients_from_total(
    s: TotalWeightSolution, t: ReconstructionTargets
) -> WCanonical:
    """Excitation weights from the solved total weight.

    Minus-sign roots throughout on the F branch; on the G branch the pivot
    coefficient is recovered from the total instead of its own (ill-
    conditioned) plus root. The result must reproduce the targets under
    the forward profile map within the validation tolerance.
    """
    tol = config.TOLERANCES
    A = s.A
    disc = A * A - t.x
    low = float(disc.min())
    if low < -tol.disc_clamp:
        raise ValidationFailure(
            f"target exceeds A^2 at the returned root (A^2 - x = {low!r})"
        )
    disc = np.maximum(disc, 0.0)
    a = (A - np.sqrt(disc)) / 2.0
    if s.branch == "G":
        if s.pivot is None:
            raise InvalidPivot("G-branch solution carries no pivot")
        p = s.pivot - 1
        a[p] = A - (float(a.sum()) - float(a[p]))
    if np.any(a <= 0.0):
        raise ValidationFailure(
            f"reconstructed weights are not all positive: {a.tolist()}"
        )
    total = float(a.sum())
    u = 1.0 - total
    if u < 0.0:
        if u < -tol.psd_slack:
            raise ValidationFailure(f"total excitation weight {total!r} exceeds 1")
        u = 0.0
    w = WCanonical(n=t.n, u=u, c=a)
    forward = invariant_profile(w).dets
    worst = float(np.max(np.abs(forward - t.x / 4.0)))
    if worst > tol.forward_check:
        raise ValidationFailure(
            f"forward profile misses the targets by {worst!r} "
            f"(allowed {tol.forward_check!r})"
        )
    return w


def reconstruct(
    t: ReconstructionTargets, grid_points: int = config.DEFAULT_GRID_POINTS
) -> WCanonical:
    """Unique canonical coefficients reproducing the targets, when any."""
    return coefficients_from_total(solve_total_weight(t, grid_points), t)


def forward_residual(w: WCanonical, t: ReconstructionTargets) -> float:
    """Largest gap between w's profile and the targets (on the det scale)."""
    return float(np.max(np.abs(invariant_profile(w).dets - t.x / 4.0)))


def uniqueness_scan(
    t: ReconstructionTargets, grid_points: int
) -> list[WCanonical]:
    """Exhaustive root scan over both branches and every maximal pivot.

    Unlike :func:`solve_total_weight` this does not assume monotonicity
    anywhere, refines every sign change it sees, and returns all distinct
    valid coefficient vectors (distinct meaning further than the dedup
    tolerance apart in max-norm). The expected count is 0 or 1.
    """
    if grid_points < 100:
        raise ValueError(f"uniqueness scan needs >= 100 grid points, got {grid_points}")
    tol = config.TOLERANCES
    impl = _backend.impl
    lo, hi = t.domain()
    assignments: list[tuple[int, int | None]] = [(_F, None)]
    assignments += [(_G, p) for p in t.maximal_pivots()]

    solutions: list[WCanonical] = []
    for branch, pivot in assignments:
        pivot0 = 0 if pivot is None else pivot - 1
        if hi - lo <= _POINT_DOMAIN:
            v = _eval_one(t, branch, pivot0, hi)
            roots = [(hi, abs(v), 0)] if abs(v) <= tol.root_accept else []
        else:
            brackets = impl.scan_brackets(
                t.x, branch, pivot0, lo, hi, grid_points, tol.disc_clamp, tol.root_accept
            )
            roots = _merge_roots(
                _refine_brackets(t, branch, pivot0, brackets), tol.coincidence
            )
        for root, residual, iterations in roots:
            sol = TotalWeightSolution(
                A=root,
                branch=_BRANCH_NAME[branch],
                pivot=pivot,
                residual=residual,
                iterations=iterations,
            )
            try:
                w = coefficients_from_total(sol, t)
            except (ValidationFailure, DegenerateState, NumericalViolation):
                continue
            if all(
                float(np.max(np.abs(w.as_vector() - seen.as_vector()))) > tol.dedup
                for seen in solutions
            ):
                solutions.append(w)
    return solutions
