"""Kernel selection: the compiled module when it imports, else pure Python.

Set QTL_PURE_PYTHON=1 to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernel_py

_compiled = None
if os.environ.get("QTL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

backend = _compiled if _compiled is not None else _kernel_py
COMPILED = _compiled is not None


def backends() -> dict:
    """Available implementations by name (for benchmarks and equivalence tests)."""
    out = {"python": _kernel_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def _tables(cfg):
    return cfg.size, cfg.add, cfg.mul, cfg.neg, cfg.inv


def rank(rows, ncols, cfg, impl=None):
    return (impl or backend).rank(rows, ncols, *_tables(cfg))


def rref_iter(a, n, cfg):
    return _kernel_py.rref_iter(a, n, cfg.size)


def profile_tally(n, a, cfg, impl=None):
    return (impl or backend).profile_tally(n, a, *_tables(cfg))


def t_fiber_tally(shape, w, cfg, impl=None):
    return (impl or backend).t_fiber_tally(tuple(shape), tuple(w), *_tables(cfg))


def flag_tally(shape, W, im, ker, t, cfg, impl=None):
    return (impl or backend).flag_tally(tuple(shape), W, im, ker, t, *_tables(cfg))
