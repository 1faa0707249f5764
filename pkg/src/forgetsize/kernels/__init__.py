"""Hot loops over clause bitmasks, with a compiled and a pure backend.

The compiled module is used when it imported and the masks fit its word
size; otherwise calls fall through to the pure-Python versions.  Set
``FORGETSIZE_KERNELS=python`` to force the fallback.
"""
import importlib
import os

from . import _pure


def _load_native():
    if os.environ.get("FORGETSIZE_KERNELS", "").lower() in ("python", "pure"):
        return None
    try:
        return importlib.import_module(__name__ + "._native")
    except ImportError:
        return None


_native = _load_native()

BACKEND = "native" if _native is not None else "python"


def _width(clauses) -> int:
    acc = 0
    for p, n in clauses:
        acc |= p | n
    return acc.bit_length()


def sat(clauses, t=0, f=0):
    clauses = list(clauses)
    if _native is not None and _width(clauses) <= 64 and (t | f).bit_length() <= 64:
        return _native.sat(clauses, t, f)
    return _pure.sat(clauses, t, f)


def horn_sat(clauses, t=0, f=0):
    clauses = list(clauses)
    if _native is not None and _width(clauses) <= 64 and (t | f).bit_length() <= 64:
        return _native.horn_sat(clauses, t, f)
    return _pure.horn_sat(clauses, t, f)


def closure(clauses, cap):
    clauses = list(clauses)
    if _native is not None and _width(clauses) <= 32:
        return _native.closure(clauses, cap)
    return _pure.closure(clauses, cap)


def minimal(clauses):
    clauses = list(clauses)
    if _native is not None and _width(clauses) <= 64:
        return _native.minimal(clauses)
    return _pure.minimal(clauses)
