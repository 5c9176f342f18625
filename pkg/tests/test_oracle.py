import itertools

import numpy as np
import pytest

from clonelab.duplicator import DuplicatorWeights, duplicator_choi, solve_duplicator
from clonelab.eigen import eigenvalues
from clonelab.errors import DimensionMismatchError, InvalidDimensionError
from clonelab.oracle import (
    VerificationReport,
    apply_channel,
    build_L_duplicator,
    build_L_triplicator,
    build_Ltilde_triplicator,
    clone_L,
    clone_states,
    verify,
)
from clonelab.tensor import Operator, basis_ket, haar_state, identity, max_entangled, permute_subsystems
from clonelab.triplicator import TriplicatorWeights, solve_triplicator, triplicator_choi


def dup_report(p, d, n=100, seed=0):
    S = duplicator_choi(solve_duplicator(DuplicatorWeights(p, d)))
    return verify(S, build_L_duplicator(p, d), [clone_L(d, 2, 1), clone_L(d, 2, 2)], n, seed)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_clone_L_trace(d):
    assert clone_L(d, 2, 1).trace().real == pytest.approx(d, abs=1e-12)
    assert clone_L(d, 3, 3).trace().real == pytest.approx(d * d, abs=1e-12)


def test_L_duplicator_symmetric_qubit_top():
    # (1 + 2 * 3/4) / 6 = 5/12
    L = build_L_duplicator(0.5, 2)
    assert eigenvalues(L)[0] == pytest.approx(5 / 12, abs=1e-12)
    assert 2 * eigenvalues(L)[0] == pytest.approx(5 / 6, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 1.0])
def test_L_duplicator_positive(p):
    L = build_L_duplicator(p, 3)
    assert L.hermitian
    assert eigenvalues(L)[-1] >= -1e-14


@pytest.mark.parametrize("w", [(0.2, 0.3, 0.5), (1.0, 0.0, 0.0), (0.5, 0.5, 0.0)])
@pytest.mark.parametrize("d", [2, 3])
def test_Ltilde_triplicator_rank(w, d):
    ev = eigenvalues(build_Ltilde_triplicator(*w, d))
    assert np.sum(ev > 1e-10) <= 3 * d * d


def test_Ltilde_triplicator_symmetric_top():
    ev = eigenvalues(build_Ltilde_triplicator(1 / 3, 1 / 3, 1 / 3, 2))
    assert ev[0] == pytest.approx(2 / 3, abs=1e-12)


def test_L_triplicator_permutation_conjugation():
    d = 2
    w = (0.5, 0.3, 0.2)
    base = build_L_triplicator(*w, d)
    for perm in itertools.permutations(range(3)):
        # clone perm[i] gets weight w[i]; relabelling outputs maps L back to base
        ws = [0.0] * 3
        for i, j in enumerate(perm):
            ws[j] = w[i]
        permuted = build_L_triplicator(*ws, d)
        order = [1] + [perm[i] + 2 for i in range(3)]
        np.testing.assert_allclose(permute_subsystems(permuted, order).entries, base.entries,
                                   atol=1e-14)


def test_triplicator_dim_cap():
    with pytest.raises(InvalidDimensionError):
        build_L_triplicator(0.5, 0.3, 0.2, 7)


def test_apply_identity_channel():
    d = 3
    S = max_entangled(d).dm() * d
    rho = haar_state(d, 8).dm()
    np.testing.assert_allclose(apply_channel(S, rho).entries, rho.entries, atol=1e-14)


def test_apply_symmetric_duplicator():
    S = duplicator_choi(solve_duplicator(DuplicatorWeights(0.5, 2)))
    rho_a, _ = clone_states(S, basis_ket(1, 2).dm())
    np.testing.assert_allclose(rho_a.entries, np.diag([5 / 6, 1 / 6]), atol=1e-12)


def test_apply_depolarizing_channel():
    d = 3
    S = identity((d, d)) * (1 / d)
    for seed in range(5):
        out = apply_channel(S, haar_state(d, seed).dm())
        np.testing.assert_allclose(out.entries, np.eye(d) / d, atol=1e-14)


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        apply_channel(identity((2, 2)), identity((3,)))


@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 1.0])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_verify_duplicator(p, d):
    r = dup_report(p, d)
    assert abs(r.optimality_gap) <= 1e-10
    assert r.trace_preserving_error <= 1e-10
    assert r.min_eigenvalue >= -1e-10
    assert max(r.universality_std) <= 1e-10


@pytest.mark.parametrize("w", [(0.5, 0.3, 0.2), (0.1, 0.0, 0.9), (1 / 3, 1 / 3, 1 / 3)])
@pytest.mark.parametrize("d", [2, 4])
def test_verify_triplicator(w, d):
    S = triplicator_choi(solve_triplicator(TriplicatorWeights(*w, d)))
    r = verify(S, build_L_triplicator(*w, d), [clone_L(d, 3, j) for j in (1, 2, 3)], 50, 3)
    assert abs(r.optimality_gap) <= 1e-10
    assert r.trace_preserving_error <= 1e-10
    assert r.min_eigenvalue >= -1e-10
    assert max(r.universality_std) <= 1e-10


def test_verify_damaged_choi():
    p, d = 0.4, 2
    S = duplicator_choi(solve_duplicator(DuplicatorWeights(p, d)))
    m = np.array(S.entries)
    m[0, 0] = 0.0
    bad = Operator(m, S.dims, hermitian=True)
    r = verify(bad, build_L_duplicator(p, d), [clone_L(d, 2, 1), clone_L(d, 2, 2)], 20, 1)
    assert r.trace_preserving_error > 1e-3


def test_verify_deterministic():
    assert dup_report(0.3, 3, 40, 7) == dup_report(0.3, 3, 40, 7)
    assert dup_report(0.3, 3, 40, 7).to_json() == dup_report(0.3, 3, 40, 7).to_json()


def test_verify_rejects_mismatch():
    S = duplicator_choi(solve_duplicator(DuplicatorWeights(0.5, 2)))
    with pytest.raises(DimensionMismatchError):
        verify(S, build_L_duplicator(0.5, 3), [], 10, 0)


def test_not_saturating_map_reports_gap():
    # a fully depolarizing 1->2 map is trace preserving but far from optimal
    d = 2
    S = identity((d, d, d)) * (1 / d**2)
    r = verify(S, build_L_duplicator(0.5, d), [clone_L(d, 2, 1), clone_L(d, 2, 2)], 10, 0)
    assert r.trace_preserving_error <= 1e-14
    assert r.optimality_gap == pytest.approx(5 / 6 - 1 / 2, abs=1e-12)


def test_monte_carlo_mean_matches_analytic():
    # a non-universal map: fidelities vary with the input, mean still converges
    d, n = 2, 2000
    rng = np.random.default_rng(0)
    k = rng.standard_normal((d**3, d**3)) + 1j * rng.standard_normal((d**3, d**3))
    raw = k @ k.conj().T
    # normalize to trace preserving: S -> (X^-1/2 (x) 1) S (X^-1/2 (x) 1), X = Tr_out S
    x = np.einsum("iaja->ij", raw.reshape(d, d * d, d, d * d))
    w, v = np.linalg.eigh(x)
    inv = (v / np.sqrt(w)) @ v.conj().T
    t = np.kron(inv, np.eye(d * d))
    S = Operator(t @ raw @ t.conj().T, (d, d, d))
    S = Operator((S.entries + S.entries.conj().T) / 2, S.dims, hermitian=True)
    Ls = [clone_L(d, 2, 1), clone_L(d, 2, 2)]
    r = verify(S, build_L_duplicator(0.5, d), Ls, n, 5)
    sigma = np.array(r.universality_std) / np.sqrt(n)
    assert r.trace_preserving_error <= 1e-12
    assert np.all(np.abs(np.array(r.mean_fidelities) - r.analytic_fidelities) <= 4 * sigma)
    assert r.optimality_gap > 0


def test_report_json_roundtrip():
    r = dup_report(0.5, 2, 10, 1)
    assert isinstance(r, VerificationReport)
    d = r.to_dict()
    assert d["samples"] == 10 and d["seed"] == 1
    assert len(d["universality_std"]) == 2
