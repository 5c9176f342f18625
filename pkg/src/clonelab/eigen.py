"""Hermitian eigendecomposition.

Two deterministic backends: LAPACK ``eigh`` (default) and a cyclic complex
Jacobi sweep, which is slow but dependency-free and useful as a cross-check
on small matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitianError
from .tensor import HERMITIAN_TOL, Ket, Operator

DEGENERACY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class EigenSystem:
    eigenvalues: np.ndarray  # non-increasing
    vectors: np.ndarray  # columns, orthonormal
    dims: tuple[int, ...]

    def __len__(self):
        return self.eigenvalues.size

    def eigenvector(self, i):
        return Ket(self.vectors[:, i], self.dims)

    @property
    def top(self):
        return float(self.eigenvalues[0])


def jacobi_eigh(a, tol=1e-13, max_sweeps=100):
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Returns ``(w, v)`` with ascending eigenvalues like ``numpy.linalg.eigh``.
    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=complex, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return np.real(np.diag(a)).copy(), v

    def off_norm():
        return np.linalg.norm(a - np.diag(np.diag(a)))

    for _ in range(max_sweeps):
        if off_norm() <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-18 * scale:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e100:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # phase-fix column q so that a[p, q] becomes real, then rotate
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = [p, q]
                a[:, cols] = a[:, cols] @ g
                a[cols, :] = g.conj().T @ a[cols, :]
                v[:, cols] = v[:, cols] @ g
                a[p, q] = a[q, p] = 0.0
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigensystem(op: Operator, method="lapack") -> EigenSystem:
    """Full spectrum of a Hermitian operator, eigenvalues non-increasing."""
    if not op.hermitian:
        raise NotHermitianError("hermitian_eigensystem needs an operator flagged hermitian")
    if not op.is_hermitian(HERMITIAN_TOL):
        raise NotHermitianError("operator is not Hermitian within tolerance")
    m = op.entries
    if method == "lapack":
        w, v = np.linalg.eigh(m)
    elif method == "jacobi":
        w, v = jacobi_eigh(m)
    else:
        raise ValueError(f"unknown method {method!r}")
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    w.setflags(write=False)
    v.setflags(write=False)
    return EigenSystem(w, v, op.dims)


def eigenvalues(op: Operator):
    """Eigenvalues only, non-increasing."""
    if not op.is_hermitian(HERMITIAN_TOL):
        raise NotHermitianError("operator is not Hermitian within tolerance")
    return np.linalg.eigvalsh(op.entries)[::-1]


def degenerate_groups(values, tol=DEGENERACY_TOL):
    """Group sorted eigenvalues into ``[(mean value, multiplicity), ...]``.

    Consecutive values closer than ``tol`` share a group.
    """
    groups = []
    start = 0
    vals = np.asarray(values, dtype=float)
    for i in range(1, vals.size + 1):
        if i == vals.size or abs(vals[i] - vals[i - 1]) > tol:
            chunk = vals[start:i]
            groups.append((float(chunk.mean()), int(chunk.size)))
            start = i
    return groups
