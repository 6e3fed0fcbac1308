# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the total-weight root search.

Mirror of ``_solver_py.py``: same evaluation order, same clamping, same
bisection loop, so both backends produce bit-identical results. Keep the
two files in sync. Compiled with -ffp-contract=off so no fused
multiply-adds sneak in.
"""

from libc.math cimport fabs, sqrt

import numpy as np

NAME = "ext"

cdef extern from "math.h":
    double nan "NAN"


cdef inline double _term(double ysq, double xk, double clamp) noexcept nogil:
    cdef double d = ysq - xk
    if d < 0.0:
        if d < -clamp:
            return nan
        return 0.0
    return sqrt(d)


cdef double _value_c(const double[::1] x, int branch, Py_ssize_t pivot,
                     double y, double clamp) noexcept nogil:
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t k
    cdef double ysq = y * y
    cdef double v, t
    if branch == 0:
        v = (n - 2) * y
    else:
        v = -((n - 2) * y)
    for k in range(n):
        t = _term(ysq, x[k], clamp)
        if branch == 0 or k == pivot:
            v = v - t
        else:
            v = v + t
    return v


def branch_values(x, int branch, Py_ssize_t pivot, ys, double clamp):
    """Evaluate f or g at each grid point; NaN marks domain violations."""
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(ys, dtype=np.float64)
    out = np.empty(yv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(yv.shape[0]):
            ov[i] = _value_c(xv, branch, pivot, yv[i], clamp)
    return out


def scan_brackets(x, int branch, Py_ssize_t pivot, double lo, double hi,
                  Py_ssize_t grid_points, double clamp, double zero_tol):
    """Uniform-grid sign-change scan; returns (ylo, yhi, vlo, vhi) tuples.

    A near-zero value is credited to the bracket ending at it (plus the
    leading pair when the first grid value is already near zero), so an
    exact grid root yields one bracket, not two.
    """
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    ys_arr = np.empty(grid_points, dtype=np.float64)
    vs_arr = np.empty(grid_points, dtype=np.float64)
    cdef double[::1] ys = ys_arr
    cdef double[::1] vs = vs_arr
    cdef double h = (hi - lo) / (grid_points - 1)
    cdef Py_ssize_t i
    cdef double a, b
    cdef double z = zero_tol
    with nogil:
        for i in range(grid_points):
            ys[i] = lo + i * h
        ys[grid_points - 1] = hi
        for i in range(grid_points):
            vs[i] = _value_c(xv, branch, pivot, ys[i], clamp)
    brackets = []
    for i in range(grid_points - 1):
        a = vs[i]
        b = vs[i + 1]
        if ((a > z and b < -z) or (a < -z and b > z)
                or (fabs(b) <= z < fabs(a))
                or (i == 0 and fabs(a) <= z)):
            brackets.append((ys[i], ys[i + 1], a, b))
    return brackets


def bisect_branch(x, int branch, Py_ssize_t pivot, double lo, double hi,
                  int sign_lo, double tol, int max_iter, double clamp):
    """Bisection on f or g over a sign-change bracket.

    ``sign_lo`` is +1 when the function is positive at ``lo``. Returns
    (root, lo, hi, residual, iterations, converged); converged is False
    only when the iteration cap fires before the width target.
    """
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef int iterations = 0
    cdef double mid, v, root, residual
    cdef bint converged = True
    with nogil:
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if iterations >= max_iter:
                converged = False
                break
            v = _value_c(xv, branch, pivot, mid, clamp)
            iterations += 1
            if v == 0.0:
                lo = mid
                hi = mid
                break
            if (v > 0.0) == (sign_lo > 0):
                lo = mid
            else:
                hi = mid
    if not converged:
        return nan, lo, hi, nan, iterations, False
    root = 0.5 * (lo + hi)
    root = min(max(root, lo), hi)
    residual = fabs(_value_c(xv, branch, pivot, root, clamp))
    return root, lo, hi, residual, iterations, True
