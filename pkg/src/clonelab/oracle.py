"""Brute-force verification of cloning machines.

Nothing here uses the closed-form solutions: the figure-of-merit operators
are assembled from explicit maximally-entangled projectors and identities,
their spectra come from a dense eigensolver, and clone fidelities are
measured by pushing Haar-random states through the Choi operator.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from math import prod

import numpy as np

from .eigen import eigenvalues
from .errors import DimensionMismatchError, InvalidDimensionError, WeightError
from .tensor import (
    Operator,
    haar_state,
    identity,
    max_entangled,
    partial_trace,
    permute_subsystems,
    pure_fidelity,
    tensor,
)

MAX_TRIPLICATOR_DIM = 6
MAX_DUPLICATOR_DIM = 10
DEFAULT_SAMPLES = 500


def _check_dim(d, cap):
    if int(d) != d or d < 2:
        raise InvalidDimensionError(f"d must be an integer >= 2, got {d!r}")
    if d > cap:
        raise InvalidDimensionError(
            f"d={d} exceeds the dense-matrix cap of {cap} for this construction")
    return int(d)


def pair_projector(d, n_out, clone):
    """Phi+ between the reference (subsystem 1) and output ``clone`` (1-based
    among the ``n_out`` outputs), tensored with identity on the other outputs."""
    base = tensor(max_entangled(d).dm(), identity((d,) * (n_out - 1)))
    # base is ordered (R, clone, others...); move the clone factor into place
    others = list(range(3, n_out + 2))
    order = [1] + others[: clone - 1] + [2] + others[clone - 1:]
    return permute_subsystems(base, order)


def clone_L(d, n_out, clone):
    """Figure of merit for one clone: [1 + d Phi+_{R,clone}] / (d(d+1))."""
    eye = identity((d,) * (n_out + 1))
    return (eye + d * pair_projector(d, n_out, clone)) * (1.0 / (d * (d + 1)))


def build_Ltilde_duplicator(p, d):
    d = _check_dim(d, MAX_DUPLICATOR_DIM)
    return p * pair_projector(d, 2, 1) + (1 - p) * pair_projector(d, 2, 2)


def build_L_duplicator(p, d):
    """p L_A + (1-p) L_B on (R, A, B)."""
    if not 0.0 <= p <= 1.0:
        raise WeightError(f"p must lie in [0, 1], got {p!r}")
    d = _check_dim(d, MAX_DUPLICATOR_DIM)
    return p * clone_L(d, 2, 1) + (1 - p) * clone_L(d, 2, 2)


def _check_weights(weights):
    if len(weights) != 3 or min(weights) < 0 or abs(sum(weights) - 1.0) > 1e-12:
        raise WeightError(f"weights {weights} are not a point of the simplex")


def build_Ltilde_triplicator(a, b, c, d):
    d = _check_dim(d, MAX_TRIPLICATOR_DIM)
    _check_weights((a, b, c))
    return (a * pair_projector(d, 3, 1) + b * pair_projector(d, 3, 2)
            + c * pair_projector(d, 3, 3))


def build_L_triplicator(a, b, c, d):
    """a L_A + b L_B + c L_C on (R, A, B, C)."""
    d = _check_dim(d, MAX_TRIPLICATOR_DIM)
    _check_weights((a, b, c))
    return a * clone_L(d, 3, 1) + b * clone_L(d, 3, 2) + c * clone_L(d, 3, 3)


def apply_channel(S, rho):
    """rho -> Tr_R[(rho^T (x) 1) S] for a Choi operator S on (R, outputs...)."""
    d = S.dims[0]
    if rho.dims != (d,):
        raise DimensionMismatchError(f"input dims {rho.dims} vs reference dimension {d}")
    out_dims = S.dims[1:]
    n = prod(out_dims)
    t = S.entries.reshape(d, n, d, n)
    out = np.einsum("sr,sorp->op", rho.entries, t)
    return Operator(out, out_dims, hermitian=False)


def clone_states(S, rho):
    """Reduced output state of every clone, in output order."""
    out = apply_channel(S, rho)
    n_out = len(out.dims)
    states = []
    for j in range(1, n_out + 1):
        states.append(partial_trace(out, [i for i in range(1, n_out + 1) if i != j]))
    return states


@dataclass(frozen=True)
class VerificationReport:
    trace_preserving_error: float
    min_eigenvalue: float
    optimality_gap: float
    universality_std: tuple[float, ...]
    mean_fidelities: tuple[float, ...]
    analytic_fidelities: tuple[float, ...]
    samples: int
    seed: int

    def to_dict(self):
        out = asdict(self)
        out["universality_std"] = list(self.universality_std)
        out["mean_fidelities"] = list(self.mean_fidelities)
        out["analytic_fidelities"] = list(self.analytic_fidelities)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def trace_preserving_error(S):
    n_out = len(S.dims) - 1
    red = partial_trace(S, range(2, n_out + 2))
    return float(np.max(np.abs(red.entries - np.eye(S.dims[0]))))


def optimality_gap(S, L):
    """d lam_max(L) - Tr[S L]; non-negative for every trace-preserving S."""
    d = S.dims[0]
    lam_max = float(eigenvalues(L)[0])
    return d * lam_max - S.expect(L).real


def verify(S, L, clone_Ls, n_samples=DEFAULT_SAMPLES, seed=0):
    """Certify a candidate Choi operator.

    Sample ``i`` draws its Haar input from the stream ``(seed, i)`` so the
    report does not depend on evaluation order.
    """
    if S.dims != L.dims or any(Lj.dims != S.dims for Lj in clone_Ls):
        raise DimensionMismatchError("S, L and the clone operators must share dims")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    d = S.dims[0]
    herm = Operator((S.entries + S.entries.conj().T) / 2, S.dims, hermitian=True)
    min_eig = float(eigenvalues(herm)[-1])

    fids = np.empty((n_samples, len(clone_Ls)))
    for i in range(n_samples):
        psi = haar_state(d, (seed, i))
        for j, rho_j in enumerate(clone_states(S, psi.dm())):
            fids[i, j] = pure_fidelity(psi, rho_j)

    return VerificationReport(
        trace_preserving_error=trace_preserving_error(S),
        min_eigenvalue=min_eig,
        optimality_gap=optimality_gap(S, L),
        universality_std=tuple(float(x) for x in fids.std(axis=0)),
        mean_fidelities=tuple(float(x) for x in fids.mean(axis=0)),
        analytic_fidelities=tuple(S.expect(Lj).real for Lj in clone_Ls),
        samples=int(n_samples),
        seed=int(seed),
    )
