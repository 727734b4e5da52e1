"""Kernel dispatch: compiled core when available, pure Python otherwise.

Set ``ORIENTCHI_PURE_PYTHON=1`` to force the fallback.  Instances with more
than 64 vertices always use the Python kernels.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("ORIENTCHI_PURE_PYTHON"):
        raise ImportError("pure Python kernels requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
WORD = 64


def backend_module(name: str | None = None):
    """Kernel module by name (``"cython"`` or ``"python"``); default is the active one."""
    if name is None:
        name = BACKEND
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def _impl(n):
    return _ckernels if _ckernels is not None and n <= WORD else _kernels_py


def max_clique(adj, cand, budget):
    return _impl(len(adj)).max_clique(adj, cand, budget)


def k_coloring(adj, verts, k, seed, budget):
    return _impl(len(adj)).k_coloring(adj, verts, k, seed, budget)


def robust_violation(out_adj, in_adj, adj, n, h, k, budget):
    return _impl(n).robust_violation(out_adj, in_adj, adj, n, h, k, budget)
