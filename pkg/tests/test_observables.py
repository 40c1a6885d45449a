import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quarticle.errors import ContractError, DomainError, ShapeError
from quarticle.discern import ip_family_collapse
from quarticle.observables import (
    OperatorFamily,
    OperatorSum,
    SingleParticleObservable,
    apply_operator,
    cluster_spectrum,
    commutes_with_swap,
    conjugate_by_swap,
    diagonal_observable,
    embed_single,
    random_cc_family,
    random_hermitian,
    random_ip_family,
    verify_cc_family,
    verify_ic,
)
from quarticle.permutations import transpose_slots
from quarticle.states import random_state
from quarticle.tensor import inner


def test_spectrum_reconstructs(rng):
    q = SingleParticleObservable(random_hermitian(4, rng))
    total = sum(v * p for v, p in q.spectrum)
    assert np.allclose(total, q.matrix, atol=1e-12)
    assert np.allclose(sum(p for _, p in q.spectrum), np.eye(4), atol=1e-12)


def test_degenerate_clusters():
    q = SingleParticleObservable(np.diag([1.0, 1.0 + 1e-10, 2.0]))
    assert len(q.eigenvalues()) == 2
    assert np.isclose(np.trace(q.projector(1.0)).real, 2)


def test_validation():
    with pytest.raises(DomainError):
        SingleParticleObservable([[0, 1], [0, 0]])
    with pytest.raises(ShapeError):
        SingleParticleObservable(np.ones((2, 3)))
    with pytest.raises(DomainError):
        diagonal_observable(3).projector(0.5)


def test_cluster_spectrum_direct():
    values = np.array([0.0, 5e-9, 1.0])
    spectrum = cluster_spectrum(values, np.eye(3))
    assert [round(v, 6) for v, _ in spectrum] == [0.0, 1.0]


def test_embed_matches_kron(rng):
    m = random_hermitian(2, rng)
    op = embed_single(m, 2, 3)
    want = np.kron(np.kron(np.eye(2), m), np.eye(2))
    assert np.allclose(op.action, want)
    k = random_state(3, 2, seed=1)
    assert np.allclose(apply_operator(k, op).dense, want @ k.dense)


def test_operator_algebra(rng):
    a = embed_single(random_hermitian(2, rng), 1, 2)
    b = embed_single(random_hermitian(2, rng), 2, 2)
    assert np.allclose((a + b).action, a.action + b.action)
    assert np.allclose((a @ b).action, a.action @ b.action)
    assert np.allclose((2j * a).action, 2j * a.action)
    assert (a + b).is_hermitian()
    with pytest.raises(ShapeError):
        a + embed_single(np.eye(2), 1, 3)


def test_swap_conjugation_matches_dense(rng):
    n, d = 3, 2
    op = OperatorSum([(1.0, tuple(random_hermitian(d, rng) for _ in range(n)))])
    conj = conjugate_by_swap(op, 1, 3)
    k = random_state(n, d, seed=3)
    lhs = apply_operator(k, conj)
    rhs = transpose_slots(apply_operator(transpose_slots(k, 1, 3), op), 1, 3)
    assert abs(inner(lhs, rhs) - inner(lhs, lhs)) < 1e-10
    assert np.allclose(lhs.dense, rhs.dense, atol=1e-12)


def test_slot_embedded_family_is_cc():
    f = OperatorFamily.slot_embedded(diagonal_observable(3), 3)
    assert verify_cc_family(f)
    assert f.eigenvalues(2) == [0.0, 1.0, 2.0]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_random_cc_family_properties(seed):
    rng = np.random.default_rng(seed)
    f = random_cc_family(3, 2, rng)
    assert verify_cc_family(f, 1e-12)
    assert all(m.is_hermitian(1e-12) for m in f.members)
    for i, j in itertools.permutations(range(1, 4), 2):
        k = ({1, 2, 3} - {i, j}).pop()
        assert verify_ic(f, i, j, k, 1e-12)


def test_non_cc_family_detected(rng):
    a, b = random_hermitian(2, rng), random_hermitian(2, rng)
    f = OperatorFamily((embed_single(a, 1, 2), embed_single(b, 2, 2)))
    assert not verify_cc_family(f)


def test_product_family():
    a = np.diag([1.0, 2.0])
    b = np.array([[0, 1], [1, 0]], dtype=float)
    f = OperatorFamily.product(a, b, 3)
    assert verify_cc_family(f)
    # non-local members get dense projectors summing to the identity
    total = sum(f.projector(2, v).matrix for v in f.eigenvalues(2))
    assert np.allclose(total, np.eye(8))


def test_ip_collapse(rng):
    f = random_ip_family(3, 2, rng)
    assert all(commutes_with_swap(f.member(1), i, j) for i, j in [(1, 2), (2, 3)])
    assert ip_family_collapse(f, 1e-12)
    with pytest.raises(ContractError):
        ip_family_collapse(OperatorFamily.slot_embedded(diagonal_observable(2), 3))


def test_verify_ic_requires_distinct():
    f = OperatorFamily.slot_embedded(diagonal_observable(2), 3)
    with pytest.raises(DomainError):
        verify_ic(f, 1, 2, 2)
