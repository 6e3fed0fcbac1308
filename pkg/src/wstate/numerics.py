"""Small-matrix factorization and scalar root-finding primitives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import config
from .errors import NoBracket, SingularOperator, ToleranceFailure
from .states import LocalOperator, as_operator


@dataclass(frozen=True)
class TriangularFactorization:
    """Unitary V and upper-triangular B with real nonnegative diagonal,
    V @ B equal to the factored input. The sign convention makes the
    factorization unique, hence deterministic and testable."""

    unitary: LocalOperator
    upper: LocalOperator


@dataclass(frozen=True)
class RootReport:
    root: float | None
    bracket: tuple[float, float]
    residual: float
    iterations: int


def qr_2x2(a) -> TriangularFactorization:
    """Factor an invertible 2x2 matrix as unitary times upper triangular.

    Gram-Schmidt on the columns; the diagonal of the triangular factor is
    real and nonnegative, with any column phases absorbed into the unitary.
    """
    a = as_operator(a)
    if a.is_singular():
        raise SingularOperator(f"|det| = {abs(a.det)!r} below invertibility floor")
    m = a.entries
    col0, col1 = m[:, 0], m[:, 1]
    p = float(np.linalg.norm(col0))
    v0 = col0 / p
    q = complex(np.vdot(v0, col1))
    w = col1 - q * v0
    r = float(np.linalg.norm(w))
    if r == 0.0:
        raise SingularOperator("columns are parallel")
    v1 = w / r
    unitary = LocalOperator(np.column_stack([v0, v1]))
    upper = LocalOperator([[p, q], [0.0, r]])
    return TriangularFactorization(unitary=unitary, upper=upper)


def bisect_decreasing(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int | None = None,
) -> RootReport:
    """Bisect a function that is >= 0 at lo and <= 0 at hi.

    Shrinks the bracket until its width is below ``tol`` or the midpoint is
    no longer representable (float resolution), whichever comes first.
    Exceeding the iteration cap before that is reported, never swallowed.
    """
    cap = config.TOLERANCES.bisect_max_iter if max_iter is None else max_iter
    if not lo < hi:
        raise NoBracket(f"empty interval [{lo!r}, {hi!r}]")
    flo, fhi = fn(lo), fn(hi)
    if not (flo >= 0.0 >= fhi):
        raise NoBracket(f"fn({lo!r})={flo!r}, fn({hi!r})={fhi!r} do not straddle zero")
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # adjacent floats: cannot shrink further
        if iterations >= cap:
            raise ToleranceFailure(
                f"bisection did not reach width {tol!r} within {cap} iterations "
                f"(bracket [{lo!r}, {hi!r}])"
            )
        v = fn(mid)
        iterations += 1
        if v == 0.0:
            lo = hi = mid
            break
        if v > 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    root = min(max(root, lo), hi)
    return RootReport(
        root=root, bracket=(lo, hi), residual=abs(fn(root)), iterations=iterations
    )


def scan_sign_changes(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    grid_points: int,
    zero_tol: float | None = None,
) -> list[tuple[float, float]]:
    """Locate sign changes of ``fn`` on a uniform grid over [lo, hi].

    Returns each consecutive grid pair across which the values change sign
    strictly, plus the pair ending at a value within ``zero_tol`` of zero
    (a near-zero value is credited to one bracket only, so an exact grid
    root yields a single bracket). Every grid point is evaluated once.
    """
    if not lo <= hi:
        raise ValueError(f"need lo <= hi, got [{lo!r}, {hi!r}]")
    if grid_points < 2:
        raise ValueError(f"need at least 2 grid points, got {grid_points}")
    z = config.TOLERANCES.root_accept if zero_tol is None else zero_tol
    h = (hi - lo) / (grid_points - 1)
    ys = [lo + i * h for i in range(grid_points)]
    ys[-1] = hi
    vs = [fn(y) for y in ys]
    brackets: list[tuple[float, float]] = []
    for i in range(grid_points - 1):
        a, b = vs[i], vs[i + 1]
        strict = (a > z and b < -z) or (a < -z and b > z)
        enters_zero = abs(b) <= z < abs(a)
        starts_at_zero = i == 0 and abs(a) <= z
        if strict or enters_zero or starts_at_zero:
            brackets.append((ys[i], ys[i + 1]))
    return brackets
