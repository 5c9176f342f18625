"""Optimal universal asymmetric 1 -> 2 cloner in closed form.

The machine is fixed by the weight ``p`` of clone A in the objective
``p F_A + (1 - p) F_B``. The top eigenvalue of the reduced figure-of-merit
operator solves ``lam^2 - lam + p(1-p)(1 - 1/d^2) = 0`` and the eigenvector
amplitudes (alpha, beta) follow from ``beta/alpha = d (lam/p - 1)``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import sqrt

import numpy as np

from .errors import InvalidDimensionError, NormalizationError, WeightError
from .tensor import Isometry, Operator, basis_ket, max_entangled, permute_subsystems, tensor

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class DuplicatorWeights:
    p: float
    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise InvalidDimensionError(f"d must be an integer >= 2, got {self.d!r}")
        if not 0.0 <= self.p <= 1.0:
            raise WeightError(f"p must lie in [0, 1], got {self.p!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "p", float(self.p))


@dataclass(frozen=True)
class DuplicatorSolution:
    p: float
    d: int
    lambda1: float
    lambda2: float
    alpha: float
    beta: float
    F_A: float
    F_B: float

    def to_dict(self):
        return {"kind": "duplicator", **asdict(self)}


def quadratic_roots(p, d):
    """Both roots of lam^2 - lam + p(1-p)(1-1/d^2), larger first."""
    q = p * (1.0 - p) * (1.0 - 1.0 / d**2)
    lam1 = 0.5 * (1.0 + sqrt(max(1.0 - 4.0 * q, 0.0)))
    return lam1, q / lam1


def normalize_pair(alpha, beta, d):
    n = sqrt(alpha * alpha + beta * beta + 2.0 * alpha * beta / d)
    return alpha / n, beta / n


def duplicator_fidelities(alpha, beta, d):
    """(F_A, F_B) for amplitudes satisfying alpha^2 + beta^2 + 2 alpha beta / d = 1."""
    if alpha < 0 or beta < 0:
        raise NormalizationError("amplitudes must be non-negative")
    if abs(alpha**2 + beta**2 + 2 * alpha * beta / d - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(
            f"alpha={alpha}, beta={beta} violate the normalization for d={d}")
    # (d - (d-1) x) / d rather than 1 - (d-1) x / d: exact at the x in {0, 1} endpoints
    return (d - (d - 1) * beta**2) / d, (d - (d - 1) * alpha**2) / d


def solve_duplicator(w: DuplicatorWeights) -> DuplicatorSolution:
    p, d = w.p, w.d
    lam1, lam2 = quadratic_roots(p, d)
    if p == 1.0:
        alpha, beta = 1.0, 0.0
    elif p == 0.0:
        alpha, beta = 0.0, 1.0
    else:
        # u = lam1 - p and v = lam1 - (1-p) satisfy u v = p(1-p)/d^2;
        # take the one free of cancellation directly and the other from the product.
        disc = sqrt(max(1.0 - 4.0 * p * (1.0 - p) * (1.0 - 1.0 / d**2), 0.0))
        if p >= 0.5:
            v = 0.5 * (2.0 * p - 1.0 + disc)
            u = p * (1.0 - p) / (d * d * v)
            alpha, beta = normalize_pair(p, d * u, d)
        else:
            u = 0.5 * (1.0 - 2.0 * p + disc)
            v = p * (1.0 - p) / (d * d * u)
            alpha, beta = normalize_pair(d * v, 1.0 - p, d)
    f_a, f_b = duplicator_fidelities(alpha, beta, d)
    return DuplicatorSolution(p, d, lam1, lam2, alpha, beta, f_a, f_b)


def eigenstate(sol: DuplicatorSolution, k):
    """alpha |Phi+>_RA |k>_B + beta |Phi+>_RB |k>_A on (R, A, B)."""
    d = sol.d
    phi = max_entangled(d)
    kb = basis_ket(k, d)
    first = tensor(phi, kb)
    second = permute_subsystems(tensor(phi, kb), (1, 3, 2))
    return sol.alpha * first + sol.beta * second


def duplicator_choi(sol: DuplicatorSolution) -> Operator:
    """Projector onto the top eigenspace, dims (R, A, B)."""
    d = sol.d
    vecs = np.stack([eigenstate(sol, k).amplitudes for k in range(1, d + 1)], axis=1)
    return Operator(vecs @ vecs.conj().T, (d, d, d), hermitian=True)


def duplicator_isometry(sol: DuplicatorSolution) -> Isometry:
    """|psi> -> alpha |psi>_A |Phi+>_BE + beta |psi>_B |Phi+>_AE, outputs (A, B, E)."""
    d = sol.d
    phi = max_entangled(d)
    cols = []
    for j in range(1, d + 1):
        e = basis_ket(j, d)
        img = sol.alpha * tensor(e, phi) + sol.beta * permute_subsystems(tensor(e, phi), (2, 1, 3))
        cols.append(img.amplitudes)
    return Isometry(np.stack(cols, axis=1), d, (d, d, d), ancillas=(3,))
