"""Acceptance gate: every shipped claim at its stated tolerance.

Each criterion prints one PASS/FAIL line (visible with ``pytest -s`` or on
failure). Tolerances are pinned here as literals on purpose, independent
of the library's configuration record.
"""

import json
import time
from pathlib import Path

import numpy as np
import pytest

from wstate import (
    NoSolution,
    ReconstructionTargets,
    SloccForm,
    apply_local,
    build_w_state,
    canonicalize_slocc,
    f_eval,
    invariant_profile,
    invariant_profile_from_state,
    lu_equivalent,
    random_canonical,
    random_unitary_2,
    reconstruct,
    slocc_form_from_canonical,
    solve_total_weight,
    uniqueness_scan,
    verify_lu_invariance,
)

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def targets_of(w) -> ReconstructionTargets:
    return ReconstructionTargets.from_profile(invariant_profile(w))


def test_criterion_1_roundtrip_reconstruction():
    """10^4 random canonical states per n in 3..12; reconstruction recovers
    every one within 1e-9 max-norm; whole sweep under 60 s."""
    trials_per_n = 10_000
    started = time.perf_counter()
    failures = 0
    worst = 0.0
    for n in range(3, 13):
        for trial in range(trials_per_n):
            w = random_canonical(n, seed=1_000_000 * n + trial)
            got = reconstruct(targets_of(w))
            err = float(np.max(np.abs(got.as_vector() - w.as_vector())))
            worst = max(worst, err)
            if err > 1e-9:
                failures += 1
    elapsed = time.perf_counter() - started
    _report(
        1,
        failures == 0 and elapsed <= 60.0,
        f"{10 * trials_per_n} round-trips, {failures} failures, "
        f"worst {worst:.3e}, {elapsed:.1f}s",
    )


def test_criterion_2_lu_invariance():
    """Canonicalizing a unitary-dressed state returns the same coefficients:
    1000 trials at n=3 and 50 at n=12, gap <= 1e-9, zero failures."""
    r3 = verify_lu_invariance(3, trials=1000, seed=202)
    r12 = verify_lu_invariance(12, trials=50, seed=203)
    _report(
        2,
        r3.failures == 0 and r12.failures == 0,
        f"n=3: {r3.failures}/1000 failures (worst {r3.worst_error:.3e}); "
        f"n=12: {r12.failures}/50 failures (worst {r12.worst_error:.3e})",
    )


def test_criterion_3_profile_decides_equivalence():
    """Equal profiles give TRUE with a witness verified to 1e-9 in vector
    norm; 10^3 distinct-coefficient pairs give FALSE."""
    bad_equal = 0
    worst_residual = 0.0
    for trial in range(1000):
        n = 3 + trial % 6
        w = random_canonical(n, seed=40_000 + trial)
        base = slocc_form_from_canonical(w).ops
        ops_a = tuple(random_unitary_2(41_000 + trial * 16 + k) @ b
                      for k, b in enumerate(base))
        ops_b = tuple(random_unitary_2(42_000 + trial * 16 + k) @ b
                      for k, b in enumerate(base))
        wa, wit_a = canonicalize_slocc(SloccForm(n=n, ops=ops_a))
        wb, wit_b = canonicalize_slocc(SloccForm(n=n, ops=ops_b))
        equivalent, witness = lu_equivalent(wa, wb, witness_a=wit_a, witness_b=wit_b)
        if not equivalent:
            bad_equal += 1
            continue
        dense_a = apply_local(build_w_state(n), ops_a)
        dense_b = apply_local(build_w_state(n), ops_b)
        residual = float(np.linalg.norm(
            witness.apply_to(dense_b).amplitudes - dense_a.amplitudes
        ))
        worst_residual = max(worst_residual, residual)
        if residual > 1e-9:
            bad_equal += 1

    bad_distinct = 0
    for trial in range(1000):
        n = 3 + trial % 6
        w1 = random_canonical(n, seed=50_000 + trial)
        w2 = random_canonical(n, seed=60_000 + trial)
        if float(np.max(np.abs(w1.as_vector() - w2.as_vector()))) <= 1e-6:
            continue  # virtually impossible; skip rather than mislabel
        equivalent, _ = lu_equivalent(w1, w2)
        if equivalent:
            bad_distinct += 1
    _report(
        3,
        bad_equal == 0 and bad_distinct == 0,
        f"equal pairs: {bad_equal}/1000 bad (worst witness residual "
        f"{worst_residual:.3e}); distinct pairs: {bad_distinct}/1000 bad",
    )


def test_criterion_4_uniqueness():
    """The exhaustive scan never finds two distinct solutions: 10^4 random
    feasible targets, n in 3..8, grid 10^4."""
    multiples = 0
    misses = 0
    for trial in range(10_000):
        n = 3 + trial % 6
        w = random_canonical(n, seed=70_000 + trial)
        solutions = uniqueness_scan(targets_of(w), 10_000)
        if len(solutions) > 1:
            multiples += 1
        elif len(solutions) == 0:
            misses += 1
    _report(
        4,
        multiples == 0 and misses == 0,
        f"10000 scans: {multiples} with multiple solutions, {misses} with none",
    )


def test_criterion_5_closed_form_vs_dense_oracle():
    """Closed-form marginal determinants match the dense partial trace to
    1e-10 on 10^4 random states across n <= 12."""
    violations = 0
    worst = 0.0
    for n in range(3, 13):
        for trial in range(1000):
            w = random_canonical(n, seed=80_000 + 1000 * n + trial)
            closed = invariant_profile(w).dets
            dense = invariant_profile_from_state(w.to_state()).dets
            gap = float(np.max(np.abs(closed - dense)))
            worst = max(worst, gap)
            if gap > 1e-10:
                violations += 1
    _report(5, violations == 0, f"10000 states, {violations} violations, "
                                f"worst {worst:.3e}")


def test_criterion_6_f_monotone():
    """The all-minus branch function decreases strictly: 10^3 random target
    sets, 10^2 sorted sample points each, zero violations."""
    rng = np.random.default_rng(90_001)
    violations = 0
    for trial in range(1000):
        n = 3 + trial % 6
        w = random_canonical(n, seed=90_000 + trial)
        t = targets_of(w)
        lo, hi = t.domain()
        ys = np.sort(rng.uniform(lo, hi, size=100))
        vals = [f_eval(float(y), t) for y in ys]
        if any(a <= b for a, b in zip(vals, vals[1:])):
            violations += 1
    _report(6, violations == 0, f"1000 target sets x 100 points, "
                                f"{violations} violations")


def test_criterion_7_golden_fixtures(run_cli):
    """The stored worked examples reproduce bit for bit through the CLI."""
    manifest = json.loads((FIXTURES / "manifest.json").read_text())
    mismatches = []
    for entry in manifest:
        args = [str(FIXTURES / a) if a.endswith(".json") else a
                for a in entry["args"]]
        res = run_cli(*args)
        expected_text = (FIXTURES / entry["expected"]).read_text()
        if res.code != entry["exit_code"] or res.stdout != expected_text:
            mismatches.append(entry["name"])
    _report(7, not mismatches, f"{len(manifest)} fixtures, "
                               f"mismatches: {mismatches or 'none'}")


def test_criterion_8_infeasibility_honesty(run_cli):
    """Infeasible targets exit 1 with a no_solution document: not an error
    code, not a crash, and the library raises a catchable condition."""
    res = run_cli("reconstruct", "--input",
                  str(FIXTURES / "infeasible_targets.input.json"))
    library_ok = False
    try:
        solve_total_weight(ReconstructionTargets.from_scaled([0.9, 0.05, 0.05]))
    except NoSolution:
        library_ok = True
    ok = res.code == 1 and res.json == {"no_solution": True} and library_ok
    _report(8, ok, f"exit {res.code}, payload {res.stdout.strip()}")
