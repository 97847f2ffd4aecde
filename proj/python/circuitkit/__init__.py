"""Exact circuit imbalance toolkit.

Numbers go in as int, Fraction or "p/q" strings and come back as Fraction
(or int when integral). Indices are 0-based.
"""

import json
import re
from fractions import Fraction

from . import _circuitkit
from ._circuitkit import CircuitkitError

__all__ = [
    "CircuitkitError",
    "imbalances",
    "solve",
    "augment",
    "graver",
    "conjecture",
    "proximity",
    "is_tu",
    "appendix",
]

_NUMBER = re.compile(r"^-?\d+(/\d+)?$")


def _encode(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass int, Fraction or 'p/q'")
    if isinstance(x, dict):
        return {k: _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    return x


def _decode(x):
    if isinstance(x, str) and _NUMBER.match(x):
        q = Fraction(x)
        return int(q) if q.denominator == 1 else q
    if isinstance(x, dict):
        return {k: _decode(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_decode(v) for v in x]
    return x


def _dump(x):
    return json.dumps(_encode(x))


def _call(fn, *args):
    return _decode(json.loads(fn(*args)))


def _subspace(A=None, kernel_of=None, span_of=None):
    if span_of is not None:
        return {"span_of": span_of}
    return {"kernel_of": kernel_of if kernel_of is not None else A}


def imbalances(A=None, *, span_of=None):
    """kappa, kappa_dot, kappa_bar and the circuits of ker(A) (or of span_of)."""
    return _call(_circuitkit.imbalances, _dump(_subspace(A, span_of=span_of)))


def solve(A, b, c, u=None):
    """Exact simplex on min c.x, Ax = b, 0 <= x <= u."""
    return _call(_circuitkit.solve, _dump({"A": A, "b": b, "c": c, "u": u}))


def augment(A, b, c, u=None, rule="steepest", check=False, start=None):
    """Circuit augmentation trace; check=True also runs the trace audit."""
    lp = _dump({"A": A, "b": b, "c": c, "u": u})
    return _call(_circuitkit.augment, lp, rule, check, "" if start is None else _dump(start))


def graver(A):
    return _call(_circuitkit.graver, _dump(A))


def conjecture(A, target):
    return _call(_circuitkit.conjecture, _dump(_subspace(A)), _dump(target))


def proximity(A, d, c=None):
    """Hoffman proximity witnesses for x in ker(A) + d, x >= 0."""
    return _call(_circuitkit.proximity, _dump(_subspace(A)), _dump(d), "" if c is None else _dump(c))


def is_tu(A):
    return _circuitkit.is_tu(_dump(A))


def appendix():
    return _call(_circuitkit.appendix)
