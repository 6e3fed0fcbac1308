"""Pure-Python (numpy) kernels for the total-weight root search.

Mirror of the compiled extension in ``_solver_core.pyx``: same evaluation
order, same clamping, same bisection loop, so both backends produce
bit-identical results. Keep the two files in sync.

Branch codes: 0 evaluates the all-minus-root balance function f, 1 the
one-plus-root balance function g for a given pivot party (0-based here).
"""

from __future__ import annotations

import math

import numpy as np

NAME = "python"


def branch_values(x, branch, pivot, ys, clamp):
    """Evaluate f or g at each grid point; NaN marks domain violations."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    n = x.size
    ysq = ys * ys
    scale = float(n - 2)
    v = scale * ys if branch == 0 else -(scale * ys)
    # accumulate party by party in index order (matches the C loop bit for bit)
    for k in range(n):
        d = ysq - x[k]
        d = np.where(d >= 0.0, d, np.where(d >= -clamp, 0.0, np.nan))
        t = np.sqrt(d)
        if branch == 0 or k == pivot:
            v = v - t
        else:
            v = v + t
    return v


def _value(x, branch, pivot, y, clamp):
    n = len(x)
    ysq = y * y
    v = (n - 2) * y if branch == 0 else -((n - 2) * y)
    for k in range(n):
        d = ysq - x[k]
        if d < 0.0:
            if d < -clamp:
                return math.nan
            d = 0.0
        t = math.sqrt(d)
        if branch == 0 or k == pivot:
            v = v - t
        else:
            v = v + t
    return v


def scan_brackets(x, branch, pivot, lo, hi, grid_points, clamp, zero_tol):
    """Uniform-grid sign-change scan; returns (ylo, yhi, vlo, vhi) tuples.

    A near-zero value is credited to the bracket ending at it (plus the
    leading pair when the first grid value is already near zero), so an
    exact grid root yields one bracket, not two.
    """
    h = (hi - lo) / (grid_points - 1)
    ys = lo + np.arange(grid_points, dtype=np.float64) * h
    ys[-1] = hi
    vs = branch_values(x, branch, pivot, ys, clamp)
    a, b = vs[:-1], vs[1:]
    z = zero_tol
    mask = ((a > z) & (b < -z)) | ((a < -z) & (b > z))
    mask |= (np.abs(b) <= z) & (np.abs(a) > z)
    if abs(vs[0]) <= z:
        mask[0] = True
    idx = np.nonzero(mask)[0]
    return [
        (float(ys[i]), float(ys[i + 1]), float(vs[i]), float(vs[i + 1])) for i in idx
    ]


def bisect_branch(x, branch, pivot, lo, hi, sign_lo, tol, max_iter, clamp):
    """Bisection on f or g over a sign-change bracket.

    ``sign_lo`` is +1 when the function is positive at ``lo``. Returns
    (root, lo, hi, residual, iterations, converged); converged is False
    only when the iteration cap fires before the width target.
    """
    x = tuple(float(v) for v in x)
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if iterations >= max_iter:
            return math.nan, lo, hi, math.nan, iterations, False
        v = _value(x, branch, pivot, mid, clamp)
        iterations += 1
        if v == 0.0:
            lo = hi = mid
            break
        if (v > 0.0) == (sign_lo > 0):
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    root = min(max(root, lo), hi)
    residual = abs(_value(x, branch, pivot, root, clamp))
    return root, lo, hi, residual, iterations, True
