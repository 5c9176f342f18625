"""JSON matrix format: {"dims": [...], "re": [...], "im": [...]}, row-major.

Operators store ``re``/``im`` as nested row lists. Kets store flat lists;
a single row or column is also accepted on input.
"""
from __future__ import annotations

import json
from math import prod

import numpy as np

from .errors import DimensionMismatchError
from .tensor import Ket, Operator


def to_dict(x):
    if isinstance(x, Ket):
        a = x.amplitudes
    elif isinstance(x, Operator):
        a = x.entries
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    return {"dims": list(x.dims), "re": a.real.tolist(), "im": a.imag.tolist()}


def to_json(x):
    return json.dumps(to_dict(x))


def from_dict(obj, hermitian=None):
    """Rebuild a Ket or Operator; the shape decides which."""
    dims = tuple(int(v) for v in obj["dims"])
    a = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj.get("im", 0.0), dtype=float)
    n = prod(dims)
    if a.ndim == 2 and a.shape == (n, n) and n > 1:
        if hermitian is None:
            hermitian = bool(np.max(np.abs(a - a.conj().T)) <= 1e-12)
        return Operator(a, dims, hermitian=hermitian)
    if a.size == n and (a.ndim == 1 or 1 in a.shape):
        return Ket(a.ravel(), dims)
    raise DimensionMismatchError(f"array of shape {a.shape} does not fit dims {dims}")


def from_json(text, hermitian=None):
    return from_dict(json.loads(text), hermitian=hermitian)
