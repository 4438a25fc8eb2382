"""Selects the sparse-polynomial kernel at import time.

The compiled extension is used when it imported cleanly; setting
PFORMS_KERNEL=python forces the interpreted fallback (the benchmark flips
between the two with :func:`use`).
"""

import os

from . import _kernel_py

try:
    from . import _kernel_c
except ImportError:
    _kernel_c = None

_ACTIVE = None


def available():
    names = ["python"]
    if _kernel_c is not None:
        names.append("cython")
    return names


def use(name: str):
    """Switch the active kernel ('python', 'cython' or 'auto')."""
    global _ACTIVE
    if name == "python":
        _ACTIVE = _kernel_py
    elif name == "cython":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel is not available")
        _ACTIVE = _kernel_c
    elif name == "auto":
        _ACTIVE = _kernel_c if _kernel_c is not None else _kernel_py
    else:
        raise ValueError(f"unknown kernel {name!r}")
    return _ACTIVE


def active_name() -> str:
    return "cython" if _ACTIVE is _kernel_c else "python"


def mul_dicts(a_terms, b_terms, nvars, add_table, mul_table, q):
    out = _ACTIVE.mul_dicts(a_terms, b_terms, nvars, add_table, mul_table, q)
    if out is None:  # compiled kernel declined (packed exponents too wide)
        out = _kernel_py.mul_dicts(a_terms, b_terms, nvars, add_table, mul_table, q)
    return out


use(os.environ.get("PFORMS_KERNEL", "auto"))
