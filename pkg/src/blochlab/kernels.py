"""Backend dispatch for the compute kernels.

The compiled extension is preferred when it imported cleanly; the pure
NumPy module is always available as a fallback. Set BLOCHLAB_BACKEND to
"python" or "compiled" to force a choice before import, or call ``use``
to swap at runtime (benchmarks do this).
"""

from __future__ import annotations

import os

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}
try:
    from . import _kernels_c

    _BACKENDS["compiled"] = _kernels_c
except ImportError:  # extension not built; pure fallback only
    _kernels_c = None

CONVERGED = _kernels_py.CONVERGED
MAX_ITER = _kernels_py.MAX_ITER
DIVERGED = _kernels_py.DIVERGED
SINGULAR = _kernels_py.SINGULAR


def _initial_backend():
    forced = os.environ.get("BLOCHLAB_BACKEND", "").strip().lower()
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(
                f"BLOCHLAB_BACKEND={forced!r} requested but that backend is "
                f"unavailable; have {sorted(_BACKENDS)}"
            )
        return _BACKENDS[forced]
    return _BACKENDS.get("compiled", _kernels_py)


_active = _initial_backend()


def use(name: str) -> str:
    """Switch the active backend; returns the previous backend's name."""
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_BACKENDS)}")
    global _active
    previous = _active.BACKEND_NAME
    _active = _BACKENDS[name]
    return previous


def backend_name() -> str:
    return _active.BACKEND_NAME


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def det_shifted(mat, lam):
    return _active.det_shifted(mat, lam)


def charpoly_coeffs(mat):
    return _active.charpoly_coeffs(mat)


def newton_diagonal(mat, target, x0, max_iter=100, tol=1e-12, blowup=1e3):
    return _active.newton_diagonal(
        mat, target, x0, max_iter=max_iter, tol=tol, blowup=blowup
    )
