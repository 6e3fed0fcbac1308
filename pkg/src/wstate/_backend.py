"""Backend selection: compiled kernels when available, numpy otherwise.

Set ``WSTATE_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and by the cross-backend agreement tests). The two backends are written
to produce bit-identical results; ``available_backends`` exposes both for
side-by-side comparison.
"""

from __future__ import annotations

import os

from . import _solver_py

if os.environ.get("WSTATE_PURE_PYTHON"):
    impl = _solver_py
else:
    try:
        from . import _solver_core as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _solver_py

BACKEND = impl.NAME


def active():
    """The kernel module the solver is currently dispatching to."""
    return impl


def available_backends() -> dict[str, object]:
    """All importable kernel modules keyed by name."""
    found: dict[str, object] = {_solver_py.NAME: _solver_py}
    try:
        from . import _solver_core

        found[_solver_core.NAME] = _solver_core
    except ImportError:
        pass
    return found
