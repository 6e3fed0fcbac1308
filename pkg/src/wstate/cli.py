"""Command-line frontend with JSON input and output.

Subcommands: canonicalize | invariants | equiv | reconstruct | selftest.
Input documents are JSON objects {"kind": ..., "n": ..., "payload": ...}
read from a file path or standard input ("-"); results are JSON on
standard output. Complex numbers are always two-element [re, im] arrays.

Exit codes: 0 = affirmative/success, 1 = negative but valid (not
equivalent / no solution / selftest failures), 2 = input or numerical
error (machine-readable error JSON on standard error).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import _backend, config
from .canonical import (
    SloccForm,
    WCanonical,
    WitnessLU,
    canonicalize_excitation,
    canonicalize_slocc,
    invariant_profile,
    lu_equivalent,
    profile_gap,
)
from .errors import NoSolution, WStateError
from .oracle import verify_unique_reconstruction, verify_lu_invariance
from .reconstruction import (
    ReconstructionTargets,
    coefficients_from_total,
    forward_residual,
    solve_total_weight,
)
from .states import PureState, apply_local, build_w_state

KINDS = ("slocc", "excitation", "canonical", "targets")


class InputError(WStateError):
    """Malformed input document."""


# ---------------------------------------------------------------------------
# JSON <-> values

def _complex_from_json(v, where: str) -> complex:
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or not all(isinstance(p, (int, float)) for p in v)
    ):
        raise InputError(f"{where}: complex numbers must be [re, im] arrays, got {v!r}")
    if not all(math.isfinite(p) for p in v):
        raise InputError(f"{where}: non-finite complex entry {v!r}")
    return complex(v[0], v[1])


def _complex_to_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix_from_json(m, where: str) -> np.ndarray:
    if not isinstance(m, list) or len(m) != 2:
        raise InputError(f"{where}: expected a 2x2 matrix")
    rows = []
    for i, row in enumerate(m):
        if not isinstance(row, list) or len(row) != 2:
            raise InputError(f"{where}: expected a 2x2 matrix")
        rows.append([_complex_from_json(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    return np.array(rows, dtype=np.complex128)


def _matrix_to_json(op) -> list[list[list[float]]]:
    m = np.asarray(op.entries if hasattr(op, "entries") else op)
    return [[_complex_to_json(complex(m[i, j])) for j in range(2)] for i in range(2)]


def _witness_to_json(witness: WitnessLU) -> list:
    return [_matrix_to_json(op) for op in witness.ops]


def _canonical_to_json(w: WCanonical) -> dict:
    return {"u": w.u, "c": [float(v) for v in w.c]}


def _real_vector(v, length: int, where: str) -> list[float]:
    if not isinstance(v, list) or len(v) != length:
        raise InputError(f"{where}: expected a list of {length} numbers")
    out = []
    for i, e in enumerate(v):
        if not isinstance(e, (int, float)) or not math.isfinite(e):
            raise InputError(f"{where}[{i}]: expected a finite number, got {e!r}")
        out.append(float(e))
    return out


# ---------------------------------------------------------------------------
# input documents

def _load_document(path: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top-level JSON value must be an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InputError(f"{path}: kind must be one of {KINDS}, got {kind!r}")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{path}: n must be a positive integer, got {n!r}")
    if not isinstance(doc.get("payload"), dict):
        raise InputError(f"{path}: payload must be an object")
    return doc


def _state_from_document(doc: dict) -> tuple[WCanonical, WitnessLU, PureState]:
    """Canonical form, its witness, and the dense input state."""
    kind, n, payload = doc["kind"], doc["n"], doc["payload"]
    if kind == "slocc":
        ops_json = payload.get("ops")
        if not isinstance(ops_json, list) or len(ops_json) != n:
            raise InputError(f"payload.ops must hold {n} matrices")
        ops = tuple(
            _matrix_from_json(m, f"payload.ops[{i}]") for i, m in enumerate(ops_json)
        )
        form = SloccForm(n=n, ops=ops)
        w, witness = canonicalize_slocc(form)
        dense = apply_local(build_w_state(n), form.ops)
        return w, witness, dense
    if kind == "excitation":
        amps_json = payload.get("amplitudes")
        if not isinstance(amps_json, list) or len(amps_json) != 2**n:
            raise InputError(f"payload.amplitudes must hold 2**{n} entries")
        amps = [
            _complex_from_json(v, f"payload.amplitudes[{i}]")
            for i, v in enumerate(amps_json)
        ]
        state = PureState(n, amps)
        w, witness = canonicalize_excitation(state)
        return w, witness, state
    if kind == "canonical":
        if "u" not in payload or not isinstance(payload["u"], (int, float)):
            raise InputError("payload.u must be a number")
        c = _real_vector(payload.get("c"), n, "payload.c")
        w = WCanonical(n=n, u=float(payload["u"]), c=np.array(c))
        return w, WitnessLU.identities(n), w.to_state()
    raise InputError(f"kind {doc['kind']!r} cannot be canonicalized")


def _targets_from_document(doc: dict) -> ReconstructionTargets:
    if doc["kind"] != "targets":
        raise InputError(f"expected kind 'targets', got {doc['kind']!r}")
    payload = doc["payload"]
    scaled = payload.get("scaled")
    if not isinstance(scaled, bool):
        raise InputError("payload.scaled must be an explicit boolean")
    has_x, has_dets = "x" in payload, "dets" in payload
    if has_x == has_dets:
        raise InputError("payload must hold exactly one of 'x' or 'dets'")
    if has_x and not scaled:
        raise InputError("payload.x requires scaled=true (x = 4*det values)")
    if has_dets and scaled:
        raise InputError("payload.dets requires scaled=false (raw determinants)")
    values = _real_vector(payload["x"] if has_x else payload["dets"], doc["n"],
                          "payload.x" if has_x else "payload.dets")
    if has_x:
        return ReconstructionTargets.from_scaled(values)
    return ReconstructionTargets.from_dets(values)


# ---------------------------------------------------------------------------
# output

def _emit(doc, pretty_lines=None, pretty=False) -> None:
    sys.stdout.write(json.dumps(doc, separators=(",", ":")) + "\n")
    if pretty and pretty_lines:
        for line in pretty_lines:
            sys.stderr.write(line + "\n")


def _spectra(dets) -> list[list[float]]:
    pairs = []
    for d in dets:
        disc = math.sqrt(max(1.0 - 4.0 * min(float(d), 0.25), 0.0))
        pairs.append([(1.0 - disc) / 2.0, (1.0 + disc) / 2.0])
    return pairs


# ---------------------------------------------------------------------------
# subcommands

def _cmd_canonicalize(args) -> int:
    doc = _load_document(args.input)
    if doc["kind"] not in ("slocc", "excitation"):
        raise InputError("canonicalize accepts kind 'slocc' or 'excitation'")
    w, witness, dense = _state_from_document(doc)
    image = witness.apply_to(w.to_state())
    residual = float(np.linalg.norm(image.amplitudes - dense.amplitudes))
    out = {
        "canonical": _canonical_to_json(w),
        "witness": _witness_to_json(witness),
        "residual": residual,
    }
    _emit(out, [
        f"canonical: u={w.u:.12g}, c={[round(float(v), 12) for v in w.c]}",
        f"witness residual: {residual:.3e}",
    ], args.pretty)
    return 0


def _cmd_invariants(args) -> int:
    doc = _load_document(args.input)
    if doc["kind"] not in ("canonical", "excitation", "slocc"):
        raise InputError("invariants accepts kind 'canonical', 'excitation' or 'slocc'")
    w, _, _ = _state_from_document(doc)
    dets = [float(v) for v in invariant_profile(w).dets]
    out = {
        "dets": dets,
        "x": [4.0 * v for v in dets],
        "spectra": _spectra(dets),
    }
    _emit(out, [f"dets: {dets}"], args.pretty)
    return 0


def _cmd_equiv(args) -> int:
    doc_a = _load_document(args.input_a)
    doc_b = _load_document(args.input_b)
    wa, wit_a, dense_a = _state_from_document(doc_a)
    wb, wit_b, dense_b = _state_from_document(doc_b)
    tol = args.tol if args.tol is not None else config.TOLERANCES.equivalence
    equivalent, witness = lu_equivalent(
        wa, wb, tol=tol, witness_a=wit_a, witness_b=wit_b
    )
    gap = profile_gap(wa, wb)
    out = {"equivalent": equivalent, "max_profile_gap": gap, "tol": tol}
    lines = [f"equivalent: {equivalent} (max profile gap {gap:.3e}, tol {tol:g})"]
    if equivalent:
        mapped = witness.apply_to(dense_b)
        residual = float(np.linalg.norm(mapped.amplitudes - dense_a.amplitudes))
        out["witness"] = _witness_to_json(witness)
        out["residual"] = residual
        lines.append(f"witness residual: {residual:.3e}")
    _emit(out, lines, args.pretty)
    return 0 if equivalent else 1


def _cmd_reconstruct(args) -> int:
    doc = _load_document(args.input)
    targets = _targets_from_document(doc)
    try:
        solution = solve_total_weight(targets, grid_points=args.grid)
    except NoSolution:
        _emit({"no_solution": True}, ["no solution: targets are infeasible"], args.pretty)
        return 1
    w = coefficients_from_total(solution, targets)
    out = {
        "canonical": _canonical_to_json(w),
        "branch": solution.branch,
        "A": solution.A,
        "residual": forward_residual(w, targets),
    }
    if solution.pivot is not None:
        out["pivot"] = solution.pivot
    _emit(out, [
        f"canonical: u={w.u:.12g}, c={[round(float(v), 12) for v in w.c]}",
        f"branch {solution.branch}, A={solution.A:.12g}",
    ], args.pretty)
    return 0


def _cmd_selftest(args) -> int:
    if not 3 <= args.n_max <= 12:
        raise InputError(f"--n-max must lie in 3..12, got {args.n_max}")
    if args.trials < 0:
        raise InputError(f"--trials must be nonnegative, got {args.trials}")
    reports = []
    if args.trials > 0:
        for n in range(3, args.n_max + 1):
            r1 = verify_lu_invariance(n, args.trials, args.seed)
            reports.append({
                "kind": "lu_invariance", "n": n, "trials": r1.trials,
                "failures": r1.failures, "worst_error": r1.worst_error,
                "seed": r1.seed,
            })
            r2 = verify_unique_reconstruction(n, args.trials, args.grid, args.seed)
            reports.append({
                "kind": "unique_reconstruction", "n": n, "trials": r2.trials,
                "failures": r2.failures, "worst_error": r2.worst_error,
                "seed": r2.seed, "grid_points": args.grid,
            })
    total_failures = sum(r["failures"] for r in reports)
    _emit(reports, [
        f"{r['kind']} n={r['n']}: {r['failures']}/{r['trials']} failures, "
        f"worst {r['worst_error']:.3e}" for r in reports
    ] + [f"backend: {_backend.BACKEND}"], args.pretty)
    return 0 if total_failures == 0 else 1


# ---------------------------------------------------------------------------

def _add_common(sub, input_flag=True):
    if input_flag:
        sub.add_argument("--input", default="-", metavar="PATH|-",
                         help="input document path, or - for stdin (default)")
    sub.add_argument("--json", action="store_true",
                     help="machine-readable JSON output (always on)")
    sub.add_argument("--pretty", action="store_true",
                     help="additionally print a human-readable summary to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wstate",
        description="Canonical forms, marginal invariants, LU equivalence and "
                    "marginal-based reconstruction for single-excitation-class "
                    "multiqubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canonicalize", help="canonical coefficients and witness")
    _add_common(p)
    p.set_defaults(handler=_cmd_canonicalize)

    p = sub.add_parser("invariants", help="per-party marginal determinants and spectra")
    _add_common(p)
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("equiv", help="decide local-unitary equivalence of two inputs")
    p.add_argument("--input-a", required=True, metavar="PATH|-")
    p.add_argument("--input-b", required=True, metavar="PATH|-")
    p.add_argument("--tol", type=float, default=None,
                   help="equivalence tolerance (default 1e-9)")
    _add_common(p, input_flag=False)
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("reconstruct", help="recover coefficients from marginal targets")
    p.add_argument("--grid", type=int, default=config.DEFAULT_GRID_POINTS,
                   help="grid points for the plus-branch scan")
    _add_common(p)
    p.set_defaults(handler=_cmd_reconstruct)

    p = sub.add_parser("selftest", help="run the randomized verifier suites")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--grid", type=int, default=config.DEFAULT_GRID_POINTS)
    _add_common(p, input_flag=False)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "equiv" and args.input_a == "-" and args.input_b == "-":
        sys.stderr.write(json.dumps({
            "error": "InputError",
            "message": "only one of --input-a/--input-b may read stdin",
        }) + "\n")
        return 2
    try:
        return args.handler(args)
    except WStateError as exc:
        sys.stderr.write(json.dumps({
            "error": type(exc).__name__,
            "message": str(exc),
        }) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
