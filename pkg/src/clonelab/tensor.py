"""Dense states and operators on labelled tensor-product spaces.

Subsystems are addressed 1-based throughout the public API, so the first
factor of a ``[d, d, d]`` space is subsystem 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    NormalizationError,
    NotHermitianError,
)

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-12


def _frozen(array, dtype=np.complex128):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _check_dim(d):
    if int(d) != d or d < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {d!r}")
    return int(d)


@dataclass(frozen=True, eq=False)
class Ket:
    """Complex amplitude vector with ordered subsystem dimensions."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]
    normalized: bool = False

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        dims = tuple(int(x) for x in self.dims)
        if any(x < 1 for x in dims) or prod(dims) != amps.size:
            raise DimensionMismatchError(
                f"dims {dims} do not match {amps.size} amplitudes")
        if self.normalized and abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise NormalizationError("ket marked normalized has norm != 1")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @property
    def size(self):
        return self.amplitudes.size

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def dm(self):
        """Return the projector |psi><psi| as an Operator."""
        return Operator(np.outer(self.amplitudes, self.amplitudes.conj()),
                        self.dims, hermitian=True)

    def __add__(self, other):
        _same_dims(self, other)
        return Ket(self.amplitudes + other.amplitudes, self.dims)

    def __sub__(self, other):
        _same_dims(self, other)
        return Ket(self.amplitudes - other.amplitudes, self.dims)

    def __mul__(self, scalar):
        return Ket(self.amplitudes * scalar, self.dims)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix acting on ``prod(dims)``-dimensional space."""

    entries: np.ndarray
    dims: tuple[int, ...]
    hermitian: bool = False

    def __post_init__(self):
        m = _frozen(self.entries)
        dims = tuple(int(x) for x in self.dims)
        n = prod(dims)
        if m.shape != (n, n):
            raise DimensionMismatchError(
                f"matrix of shape {m.shape} does not match dims {dims}")
        if self.hermitian and n and np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise NotHermitianError("operator flagged hermitian is not")
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "dims", dims)

    @property
    def size(self):
        return self.entries.shape[0]

    def trace(self):
        return complex(np.trace(self.entries))

    def is_hermitian(self, tol=HERMITIAN_TOL):
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)

    def expect(self, other):
        """Tr[self @ other]."""
        _same_dims(self, other)
        return complex(np.einsum("ij,ji->", self.entries, other.entries))

    def __add__(self, other):
        _same_dims(self, other)
        return Operator(self.entries + other.entries, self.dims,
                        self.hermitian and other.hermitian)

    def __sub__(self, other):
        _same_dims(self, other)
        return Operator(self.entries - other.entries, self.dims,
                        self.hermitian and other.hermitian)

    def __mul__(self, scalar):
        real = np.isreal(scalar)
        return Operator(self.entries * scalar, self.dims, self.hermitian and real)

    __rmul__ = __mul__

    def __matmul__(self, other):
        _same_dims(self, other)
        return Operator(self.entries @ other.entries, self.dims)


def _same_dims(x, y):
    if tuple(x.dims) != tuple(y.dims):
        raise DimensionMismatchError(f"dims {x.dims} != {y.dims}")


def basis_ket(j, d):
    """Computational basis ket |j> (1-based) of a d-level system."""
    if not 1 <= j <= d:
        raise IndexError(f"basis index {j} outside 1..{d}")
    v = np.zeros(d, dtype=complex)
    v[j - 1] = 1.0
    return Ket(v, (d,), normalized=True)


def identity(dims):
    dims = tuple(dims)
    return Operator(np.eye(prod(dims)), dims, hermitian=True)


def max_entangled(d):
    """(1/sqrt d) sum_j |j>|j> on two d-level systems."""
    d = _check_dim(d)
    v = np.eye(d, dtype=complex).ravel() / np.sqrt(d)
    return Ket(v, (d, d), normalized=True)


def tensor(*factors):
    """Kronecker product of Kets or of Operators; dims are concatenated."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    kind = type(factors[0])
    if any(type(f) is not kind for f in factors):
        raise TypeError("cannot mix Ket and Operator in tensor()")
    dims = tuple(x for f in factors for x in f.dims)
    if kind is Ket:
        out = factors[0].amplitudes
        for f in factors[1:]:
            out = np.kron(out, f.amplitudes)
        return Ket(out, dims)
    out = factors[0].entries
    for f in factors[1:]:
        out = np.kron(out, f.entries)
    return Operator(out, dims, all(f.hermitian for f in factors))


def _zero_based(indices, n):
    idx = sorted({int(i) for i in indices})
    for i in idx:
        if not 1 <= i <= n:
            raise IndexError(f"subsystem index {i} outside 1..{n}")
    return [i - 1 for i in idx]


def partial_trace(op, drop):
    """Trace out the subsystems listed in ``drop`` (1-based).

    Kept subsystems stay in their original order.
    """
    n = len(op.dims)
    gone = _zero_based(drop, n)
    keep = [i for i in range(n) if i not in gone]
    dims = op.dims
    t = op.entries.reshape(dims + dims)
    # einsum labels: rows 0..n-1, columns n..2n-1, traced columns reuse row labels
    rows = list(range(n))
    cols = [i if i in gone else n + i for i in range(n)]
    out_labels = keep + [n + i for i in keep]
    res = np.einsum(t, rows + cols, out_labels)
    kept_dims = tuple(dims[i] for i in keep)
    side = prod(kept_dims)
    return Operator(res.reshape(side, side), kept_dims, op.hermitian)


def permute_subsystems(x, order):
    """Reorder subsystems: new subsystem i is old subsystem ``order[i]`` (1-based)."""
    n = len(x.dims)
    perm = [int(i) - 1 for i in order]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{order} is not a permutation of 1..{n}")
    new_dims = tuple(x.dims[i] for i in perm)
    if isinstance(x, Ket):
        t = x.amplitudes.reshape(x.dims).transpose(perm)
        return Ket(t.ravel(), new_dims)
    t = x.entries.reshape(x.dims + x.dims)
    t = t.transpose(perm + [n + i for i in perm])
    side = prod(new_dims)
    return Operator(t.reshape(side, side), new_dims, x.hermitian)


def haar_state(d, seed):
    """Haar-random pure state of a d-level system.

    ``seed`` may be an int or a tuple of ints (e.g. ``(seed, index)`` for
    independent per-sample streams).
    """
    d = _check_dim(d)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return Ket(v / np.linalg.norm(v), (d,), normalized=True)


def sym_basis_state(k, l, sign, d):
    """|kl+> or |kl-> on two d-level systems, indices 1-based.

    |kl+-> = (|kl> +- |lk>)/sqrt 2 for k != l and |kk+> = |kk>.
    """
    d = _check_dim(d)
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if not (1 <= k <= d and 1 <= l <= d):
        raise IndexError(f"indices ({k}, {l}) outside 1..{d}")
    if k > l:
        raise ValueError("require k <= l")
    v = np.zeros((d, d), dtype=complex)
    if k == l:
        if sign == "-":
            raise ValueError("antisymmetric state with k == l vanishes")
        v[k - 1, k - 1] = 1.0
    else:
        s = 1.0 if sign == "+" else -1.0
        v[k - 1, l - 1] = 1 / np.sqrt(2)
        v[l - 1, k - 1] = s / np.sqrt(2)
    return Ket(v.ravel(), (d, d), normalized=True)


def pure_fidelity(psi, rho):
    """<psi|rho|psi>."""
    if psi.size != rho.size:
        raise DimensionMismatchError(
            f"state of size {psi.size} vs operator of size {rho.size}")
    a = psi.amplitudes
    return float(np.vdot(a, rho.entries @ a).real)


@dataclass(frozen=True, eq=False)
class Isometry:
    """Linear map V from ``in_dim`` to ``prod(out_dims)``, stored as a matrix.

    ``ancillas`` lists (1-based) output subsystems that are discarded when V
    is used as a channel.
    """

    matrix: np.ndarray
    in_dim: int
    out_dims: tuple[int, ...]
    ancillas: tuple[int, ...] = ()

    def __post_init__(self):
        m = _frozen(self.matrix)
        out_dims = tuple(int(x) for x in self.out_dims)
        if m.shape != (prod(out_dims), self.in_dim):
            raise DimensionMismatchError(
                f"matrix shape {m.shape} vs ({prod(out_dims)}, {self.in_dim})")
        _zero_based(self.ancillas, len(out_dims))
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "out_dims", out_dims)
        object.__setattr__(self, "ancillas", tuple(self.ancillas))

    def isometry_error(self):
        """max |V^dag V - I|."""
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(self.in_dim))))

    def apply(self, psi):
        if psi.size != self.in_dim:
            raise DimensionMismatchError(f"input of size {psi.size}, expected {self.in_dim}")
        return Ket(self.matrix @ psi.amplitudes, self.out_dims)

    def channel(self, rho):
        """Tr_ancillas[V rho V^dag]."""
        if rho.size != self.in_dim:
            raise DimensionMismatchError(f"input of size {rho.size}, expected {self.in_dim}")
        out = Operator(self.matrix @ rho.entries @ self.matrix.conj().T,
                       self.out_dims, hermitian=False)
        if self.ancillas:
            out = partial_trace(out, self.ancillas)
        return out

    def choi(self):
        """Choi operator sum_ij |i><j| (x) channel(|i><j|), input system first."""
        d = self.in_dim
        kept = [i for i in range(len(self.out_dims)) if i + 1 not in self.ancillas]
        out_side = prod(self.out_dims[i] for i in kept)
        blocks = np.zeros((d, out_side, d, out_side), dtype=complex)
        for i in range(d):
            for j in range(d):
                e = np.zeros((d, d))
                e[i, j] = 1.0
                blocks[i, :, j, :] = self.channel(Operator(e, (d,))).entries
        dims = (d,) + tuple(self.out_dims[i] for i in kept)
        n = d * out_side
        m = blocks.reshape(n, n)
        return Operator((m + m.conj().T) / 2, dims, hermitian=True)
