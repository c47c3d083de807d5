"""Backend selection for the hot kernels.

The compiled module ``_kernels`` is used when it imports; otherwise the
pure-Python ``_kernels_py`` is used.  Both expose the same functions and
return identical results.  ``use_backend`` switches at runtime (tests and
the benchmark compare the two); ``LGCOH_BACKEND=python`` forces the
fallback at import.
"""

from __future__ import annotations

import importlib
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _kernels_py
if os.environ.get("LGCOH_BACKEND") == "python":
    _active = _kernels_py


def available() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def backend() -> str:
    return "cython" if _active is _compiled and _compiled is not None else "python"


def use_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _kernels_py
    elif name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    # memoized results are backend-independent, but clear them so timings are honest
    clear_caches()


_MEMOIZED = (("lr", "_lr_cached"), ("homalg", "_hom_weights"), ("ktheory", "_schur_cached"))
_originals: dict = {}


def _memoized():
    for mod, attr in _MEMOIZED:
        m = importlib.import_module(f"{__package__}.{mod}")
        yield m, attr, _originals.setdefault((mod, attr), getattr(m, attr))


def clear_caches() -> None:
    for _, _, fn in _memoized():
        fn.cache_clear()


def set_caching(enabled: bool) -> None:
    """Turn memoization of LR products, Hom spaces and Schur polynomials on or off."""
    for m, attr, fn in _memoized():
        fn.cache_clear()
        setattr(m, attr, fn if enabled else fn.__wrapped__)


def bott_length(v) -> int:
    return _active.bott_length(v)


def lr_coefficients(lam, mu, n: int) -> dict:
    return _active.lr_coefficients(lam, mu, n)


def schur_monomials(shape, n: int) -> dict:
    try:
        return _active.schur_monomials(shape, n)
    except OverflowError:
        return _kernels_py.schur_monomials(shape, n)


def laurent_mul(a: dict, b: dict) -> dict:
    try:
        return _active.laurent_mul(a, b)
    except OverflowError:
        return _kernels_py.laurent_mul(a, b)
