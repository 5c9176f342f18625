"""Optimal universal asymmetric 1 -> 3 cloner in closed form.

For weights (a, b, c) on the simplex the reduced figure-of-merit operator has
six distinct non-zero eigenvalues: the roots of two cubics P+ and P- that
differ only in their constant term. The optimal machine projects onto the
top eigenspace of the symmetric sector, whose eigenvectors are fixed by an
amplitude triple (alpha, beta, gamma).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import acos, cos, pi, sqrt

import numpy as np

from .duplicator import DuplicatorWeights, solve_duplicator
from .errors import (
    ComplexRootError,
    InvalidDimensionError,
    NormalizationError,
    NotARootError,
    WeightError,
)
from .tensor import Isometry, Ket, Operator, basis_ket, max_entangled, permute_subsystems, sym_basis_state, tensor

SIMPLEX_TOL = 1e-12
NORMALIZATION_TOL = 1e-12
ROOT_TOL = 1e-9
MAX_CHOI_DIM = 6


@dataclass(frozen=True)
class TriplicatorWeights:
    a: float
    b: float
    c: float
    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise InvalidDimensionError(f"d must be an integer >= 2, got {self.d!r}")
        w = (self.a, self.b, self.c)
        if min(w) < 0:
            raise WeightError(f"weights must be non-negative, got {w}")
        if abs(sum(w) - 1.0) > SIMPLEX_TOL:
            raise WeightError(f"weights must sum to 1 within {SIMPLEX_TOL}, got sum {sum(w)!r}")
        object.__setattr__(self, "d", int(self.d))
        for name in "abc":
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def as_tuple(self):
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class AmplitudeTriple:
    alpha: float
    beta: float
    gamma: float
    d: int

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise NormalizationError("amplitudes must be non-negative")
        err = abs(norm_squared(self.alpha, self.beta, self.gamma, self.d) - 1.0)
        if err > NORMALIZATION_TOL:
            raise NormalizationError(f"amplitude triple off normalization by {err:.3g}")

    @property
    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class TriplicatorSolution:
    weights: TriplicatorWeights
    lambda_plus: tuple[float, float, float]
    lambda_minus: tuple[float, float, float]
    amplitudes: AmplitudeTriple
    F_A: float
    F_B: float
    F_C: float

    @property
    def d(self):
        return self.weights.d

    @property
    def fidelities(self):
        return (self.F_A, self.F_B, self.F_C)

    def to_dict(self):
        w, amp = self.weights, self.amplitudes
        return {
            "kind": "triplicator",
            "a": w.a, "b": w.b, "c": w.c, "d": w.d,
            "lambda_plus": list(self.lambda_plus),
            "lambda_minus": list(self.lambda_minus),
            "alpha": amp.alpha, "beta": amp.beta, "gamma": amp.gamma,
            "F_A": self.F_A, "F_B": self.F_B, "F_C": self.F_C,
        }


def norm_squared(alpha, beta, gamma, d):
    return alpha**2 + beta**2 + gamma**2 + 2.0 / d * (alpha * beta + alpha * gamma + beta * gamma)


def cubic_coefficients(weights, sector):
    """(s, t) such that P(lam) = lam^3 - lam^2 + s lam - t."""
    a, b, c = weights.as_tuple
    d = weights.d
    if sector not in ("+", "-"):
        raise ValueError(f"sector must be '+' or '-', got {sector!r}")
    sign = 1.0 if sector == "+" else -1.0
    s = (a * b + b * c + a * c) * (1.0 - d**-2)
    t = a * b * c * (1.0 + sign * 2.0 * d**-3 - 3.0 * d**-2)
    return s, t


def cubic(weights, sector, lam):
    s, t = cubic_coefficients(weights, sector)
    return ((lam - 1.0) * lam + s) * lam - t


def cubic_roots(weights, sector):
    """The three real roots of P+ or P-, descending."""
    s, t = cubic_coefficients(weights, sector)
    if t == 0.0:
        # lam (lam^2 - lam + s): a zero weight reduces to the duplicator quadratic
        lam1 = 0.5 * (1.0 + sqrt(max(1.0 - 4.0 * s, 0.0)))
        return (lam1, s / lam1, 0.0)

    # depressed cubic x^3 + p x + q with lam = x + 1/3; p < 0 since s < 1/3
    p = s - 1.0 / 3.0
    q = -2.0 / 27.0 + s / 3.0 - t
    m = 2.0 * sqrt(-p / 3.0)
    arg = 3.0 * q / (p * m)
    if abs(arg) > 1.0 + 1e-10:
        raise ComplexRootError(
            f"cubic for weights {weights.as_tuple}, d={weights.d} has complex roots (arg={arg})")
    phi = acos(min(1.0, max(-1.0, arg))) / 3.0
    roots = []
    for k in range(3):
        lam = 1.0 / 3.0 + m * cos(phi - 2.0 * pi * k / 3.0)
        # one Newton step tidies the last bits; skipped near double roots
        slope = (3.0 * lam - 2.0) * lam + s
        if abs(slope) > 1e-6:
            lam -= (((lam - 1.0) * lam + s) * lam - t) / slope
        roots.append(lam)
    return tuple(sorted(roots, reverse=True))


def _mixing_matrix(weights):
    a, b, c = weights.as_tuple
    d = weights.d
    return np.array([[a, a / d, a / d],
                     [b / d, b, b / d],
                     [c / d, c / d, c]])


def amplitudes_for_root(weights, lam) -> AmplitudeTriple:
    """Non-negative normalized (alpha, beta, gamma) for the top symmetric root."""
    d = weights.d
    if abs(cubic(weights, "+", lam)) > ROOT_TOL:
        raise NotARootError(f"{lam!r} is not a root of P+ for weights {weights.as_tuple}")
    w = weights.as_tuple
    zero = [i for i, x in enumerate(w) if x == 0.0]
    if zero:
        top = cubic_roots(weights, "+")[0]
        if abs(lam - top) > ROOT_TOL:
            raise NotARootError("with a zero weight only the top root is supported")
        amps = [0.0, 0.0, 0.0]
        live = [i for i in range(3) if i not in zero]
        if len(live) == 1:
            amps[live[0]] = 1.0
        else:
            i, j = live
            sol = solve_duplicator(DuplicatorWeights(w[i] / (w[i] + w[j]), d))
            amps[i], amps[j] = sol.alpha, sol.beta
        return AmplitudeTriple(*amps, d)

    shifted = _mixing_matrix(weights) - lam * np.eye(3)
    # null vector of a rank-2 3x3 matrix: largest cross product of two rows
    rows = shifted
    cands = [np.cross(rows[0], rows[1]), np.cross(rows[0], rows[2]), np.cross(rows[1], rows[2])]
    v = max(cands, key=np.linalg.norm)
    if v.sum() < 0:
        v = -v
    if v.min() < -1e-10 * np.abs(v).max():
        raise NotARootError(f"eigenvector for {lam!r} is not sign-definite; not the top root?")
    v = np.clip(v, 0.0, None)
    v = v / sqrt(norm_squared(*v, d))
    return AmplitudeTriple(float(v[0]), float(v[1]), float(v[2]), d)


def triplicator_fidelities(amp: AmplitudeTriple):
    """(F_A, F_B, F_C) from the amplitude triple."""
    al, be, ga, d = amp.alpha, amp.beta, amp.gamma, amp.d
    if abs(norm_squared(al, be, ga, d) - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError("amplitude triple is not normalized")

    def fid(x, y):
        return (d - (d - 1) * (x * x + y * y + 2.0 * x * y / (d + 1))) / d

    return fid(be, ga), fid(al, ga), fid(al, be)


def solve_triplicator(weights: TriplicatorWeights) -> TriplicatorSolution:
    plus = cubic_roots(weights, "+")
    minus = cubic_roots(weights, "-")
    amp = amplitudes_for_root(weights, plus[0])
    f_a, f_b, f_c = triplicator_fidelities(amp)
    d = weights.d
    achieved = weights.a * f_a + weights.b * f_b + weights.c * f_c
    bound = (1.0 + d * plus[0]) / (d + 1)
    if abs(achieved - bound) > 1e-11:
        raise ArithmeticError(
            f"weighted fidelity {achieved!r} misses the eigenvalue bound {bound!r}")
    return TriplicatorSolution(weights, plus, minus, amp, f_a, f_b, f_c)


def _arrange(ket, labels, target):
    """Reorder a ket whose factors are named ``labels`` into ``target`` order."""
    return permute_subsystems(ket, [labels.index(x) + 1 for x in target])


def eigenstate(sol: TriplicatorSolution, k, l):
    """|lam+,1; kl> on (R, A, B, C), 1 <= k <= l <= d."""
    d = sol.d
    phi = max_entangled(d)
    pair = tensor(phi, sym_basis_state(k, l, "+", d))
    al, be, ga = sol.amplitudes.as_tuple
    target = "RABC"
    return (al * _arrange(pair, "RABC", target)
            + be * _arrange(pair, "RBAC", target)
            + ga * _arrange(pair, "RCAB", target))


def triplicator_choi(sol: TriplicatorSolution) -> Operator:
    """(2/(d+1)) sum_{l>=k} |lam+,1;kl><lam+,1;kl| on (R, A, B, C)."""
    d = sol.d
    if d > MAX_CHOI_DIM:
        raise InvalidDimensionError(f"triplicator Choi operator limited to d <= {MAX_CHOI_DIM}")
    vecs = np.stack([eigenstate(sol, k, l).amplitudes
                     for k in range(1, d + 1) for l in range(k, d + 1)], axis=1)
    return Operator(2.0 / (d + 1) * (vecs @ vecs.conj().T), (d,) * 4, hermitian=True)


def _ancilla_pairs(d, first, second):
    """|Phi+>_{first,E} |Phi+>_{second,F} + |Phi+>_{first,F} |Phi+>_{second,E} on
    the factors (first, second, E, F)."""
    phi = max_entangled(d)
    both = tensor(phi, phi)
    labels = [first, "E", second, "F"]
    swapped = [first, "F", second, "E"]
    target = [first, second, "E", "F"]
    return _arrange(both, labels, target) + _arrange(both, swapped, target)


def symmetric_identity(d):
    """Both sides of (2/d) sum_{l>=k} |kl+>_BC |kl+>_EF = Phi_BE Phi_CF + Phi_BF Phi_CE."""
    lhs = sum((tensor(sym_basis_state(k, l, "+", d), sym_basis_state(k, l, "+", d))
               for k in range(1, d + 1) for l in range(k, d + 1)),
              start=Ket(np.zeros(d**4), (d,) * 4)) * (2.0 / d)
    return lhs, _ancilla_pairs(d, "B", "C")


def triplicator_isometry(sol: TriplicatorSolution) -> Isometry:
    """Two-ancilla dilation with outputs ordered (A, B, C, E, F)."""
    d = sol.d
    norm = sqrt(d / (2.0 * (d + 1)))
    al, be, ga = sol.amplitudes.as_tuple
    target = list("ABCEF")
    cols = []
    for j in range(1, d + 1):
        e = basis_ket(j, d)
        img = (al * _arrange(tensor(e, _ancilla_pairs(d, "B", "C")), list("ABCEF"), target)
               + be * _arrange(tensor(e, _ancilla_pairs(d, "A", "C")), list("BACEF"), target)
               + ga * _arrange(tensor(e, _ancilla_pairs(d, "A", "B")), list("CABEF"), target))
        cols.append(norm * img.amplitudes)
    return Isometry(np.stack(cols, axis=1), d, (d,) * 5, ancillas=(4, 5))
