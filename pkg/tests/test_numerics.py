"""Tests for the 2x2 factorization and scalar root-finding primitives."""

import math

import numpy as np
import pytest

from wstate import (
    LocalOperator,
    NoBracket,
    SingularOperator,
    ToleranceFailure,
    bisect_decreasing,
    qr_2x2,
    scan_sign_changes,
)


class TestQr2x2:
    def test_identity(self):
        fac = qr_2x2(np.eye(2))
        np.testing.assert_allclose(fac.unitary.entries, np.eye(2), atol=1e-15)
        np.testing.assert_allclose(fac.upper.entries, np.eye(2), atol=1e-15)

    def test_lower_triangular_example(self):
        fac = qr_2x2([[1, 0], [1, 1]])
        s = 1 / math.sqrt(2)
        np.testing.assert_allclose(
            fac.unitary.entries, [[s, -s], [s, s]], atol=1e-12
        )
        np.testing.assert_allclose(
            fac.upper.entries, [[math.sqrt(2), s], [0, s]], atol=1e-12
        )

    def test_diagonal_phase_pulled_into_unitary(self):
        theta = 0.83
        fac = qr_2x2(np.diag([2.0, 3.0 * np.exp(1j * theta)]))
        np.testing.assert_allclose(
            fac.unitary.entries, np.diag([1.0, np.exp(1j * theta)]), atol=1e-12
        )
        np.testing.assert_allclose(fac.upper.entries, np.diag([2.0, 3.0]), atol=1e-12)

    def test_singular_rejected(self):
        with pytest.raises(SingularOperator):
            qr_2x2([[1, 2], [2, 4]])

    def test_random_reconstruction_and_convention(self):
        rng = np.random.default_rng(42)
        scales = 10.0 ** rng.uniform(0, 3, size=10_000)
        for scale in scales:
            m = scale * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            op = LocalOperator(m)
            if abs(op.det) <= 1e-12:
                continue
            fac = qr_2x2(op)
            v, b = fac.unitary.entries, fac.upper.entries
            assert np.max(np.abs(v @ b - m)) <= 1e-12 * max(1.0, scale)
            assert b[1, 0] == 0
            assert b[0, 0].imag == 0 and b[1, 1].imag == 0
            assert b[0, 0].real >= 0 and b[1, 1].real >= 0
            assert np.max(np.abs(v @ v.conj().T - np.eye(2))) <= 1e-10
            # determinant magnitude preserved
            det_b = abs(b[0, 0] * b[1, 1])
            assert det_b == pytest.approx(abs(op.det), rel=1e-10)


class TestBisectDecreasing:
    def test_linear(self):
        report = bisect_decreasing(lambda y: 1.0 - y, 0.0, 2.0, 1e-12)
        assert report.root == pytest.approx(1.0, abs=1e-12)
        assert report.residual <= 1e-12

    def test_symmetric_branch_function(self):
        # f(y) = y - 3 sqrt(y^2 - 8/9) vanishes at y = 1
        x = 8 / 9
        f = lambda y: y - 3 * math.sqrt(max(y * y - x, 0.0))
        report = bisect_decreasing(f, math.sqrt(x), 1.5, 1e-12)
        assert report.root == pytest.approx(1.0, abs=1e-12)

    def test_no_sign_change(self):
        with pytest.raises(NoBracket):
            bisect_decreasing(lambda y: -1.0, 0.0, 1.0, 1e-12)

    def test_empty_interval(self):
        with pytest.raises(NoBracket):
            bisect_decreasing(lambda y: -y, 1.0, 1.0, 1e-12)

    def test_iteration_cap_is_loud(self):
        with pytest.raises(ToleranceFailure):
            bisect_decreasing(lambda y: math.pi / 4 - y, 0.0, 2.0, 1e-12, max_iter=3)

    def test_random_decreasing_functions(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            a = rng.uniform(0.1, 5.0)
            b = rng.uniform(0.1, 5.0)
            root = rng.uniform(0.2, 1.8)
            f = lambda y, a=a, b=b, r=root: a * (r - y) + b * (r**3 - y**3)
            report = bisect_decreasing(f, 0.0, 2.0, 1e-12)
            assert report.root == pytest.approx(root, abs=1e-11)
            lo, hi = report.bracket
            assert lo <= report.root <= hi
            assert f(lo) >= 0.0 >= f(hi)


class TestScanSignChanges:
    def test_single_crossing_at_grid_point(self):
        brackets = scan_sign_changes(lambda y: y * y - 1.0, 0.0, 2.0, 101)
        assert len(brackets) == 1
        lo, hi = brackets[0]
        assert lo <= 1.0 <= hi

    def test_plus_branch_worked_example(self):
        x = (0.8, 0.72, 0.32)

        def g(y):
            terms = [math.sqrt(max(y * y - xk, 0.0)) for xk in x]
            return terms[1] + terms[2] - terms[0] - y

        brackets = scan_sign_changes(g, math.sqrt(0.8), 1.0, 10_000)
        assert len(brackets) == 1
        lo, hi = brackets[0]
        assert lo <= 0.9 <= hi

    def test_no_crossing_returns_empty(self):
        x = (0.9, 0.05, 0.05)

        def g(y):
            terms = [math.sqrt(max(y * y - xk, 0.0)) for xk in x]
            return terms[1] + terms[2] - terms[0] - y

        assert scan_sign_changes(g, math.sqrt(0.9), 1.0, 10_000) == []

    def test_each_point_evaluated_once(self):
        calls = []

        def f(y):
            calls.append(y)
            return y - 0.5

        scan_sign_changes(f, 0.0, 1.0, 11)
        assert len(calls) == 11
        assert len(set(calls)) == 11

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            scan_sign_changes(lambda y: y, 1.0, 0.0, 10)
        with pytest.raises(ValueError):
            scan_sign_changes(lambda y: y, 0.0, 1.0, 1)
