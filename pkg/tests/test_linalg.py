import math

import numpy as np
import pytest

from ssf_lab import (
    HermitianMatrix,
    ProjectionMatrix,
    UnitaryMatrix,
    apply_scalar_function,
    det_complex,
    eig_hermitian,
    eigenphases,
    eigenvalue_sequences,
    fredholm_index,
    negative_projection,
    pencil_real_zeros,
)
from ssf_lab.errors import (
    DomainViolation,
    KernelAtZero,
    NotHermitian,
    NotUnitary,
    SingularM,
)
from ssf_lab.linalg import schatten_norm, sequence_lp_distance
from ssf_lab.randgen import random_hermitian, random_projection, random_psd, random_unitary


def test_hermitian_validation():
    HermitianMatrix([[1.0, 1j], [-1j, 2.0]])
    with pytest.raises(NotHermitian):
        HermitianMatrix([[0.0, 1.0], [0.0, 0.0]])


def test_unitary_validation():
    UnitaryMatrix(np.diag([1j, -1.0]))
    with pytest.raises(NotUnitary):
        UnitaryMatrix(np.diag([0.5, 1.0]))


def test_eig_hermitian_diagonal():
    vals, _ = eig_hermitian(HermitianMatrix(np.diag([3.0, 1.0, 2.0])))
    assert np.allclose(vals, [1.0, 2.0, 3.0])


def test_eig_hermitian_pauli_x():
    vals, vecs = eig_hermitian(HermitianMatrix([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(vals, [-1.0, 1.0])
    for k, sign in ((0, -1.0), (1, 1.0)):
        v = vecs[:, k]
        target = np.array([1.0, sign]) / math.sqrt(2)
        # eigenvectors are defined up to a phase
        overlap = abs(np.vdot(target, v))
        assert abs(overlap - 1.0) < 1e-12


def test_eig_hermitian_residual_oracle(rng):
    m = random_hermitian(rng, 8)
    vals, vecs = eig_hermitian(m)
    scale = np.linalg.norm(m.entries, 2)
    residual = np.max(np.abs(m.entries @ vecs - vecs * vals))
    assert residual < 1e-8 * scale
    assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(8))) < 1e-8


def test_eigenphases_identity_and_diagonal():
    assert eigenphases(np.eye(4)) == []
    ph = eigenphases(np.diag([np.exp(1j * np.pi / 2), 1.0, np.exp(1j * np.pi)]))
    assert np.allclose(ph, [np.pi / 2, np.pi])


def test_eigenphases_scalar_closed_form():
    # stationary scattering value for boundary data (0, 1, 1)
    s = (1 - 1j) / (1 + 1j)
    assert abs(s + 1j) < 1e-15
    assert np.allclose(eigenphases(np.array([[s]])), [3 * np.pi / 2])


def test_eigenphases_conjugation_invariance(rng):
    for _ in range(25):
        n = int(rng.integers(2, 7))
        w = random_unitary(rng, n)
        u = random_unitary(rng, n)
        p0 = eigenphases(w)
        p1 = eigenphases(u @ w @ u.conj().T)
        assert len(p0) == len(p1)
        assert all(abs(a - b) < 1e-8 for a, b in zip(p0, p1))


def test_negative_projection_examples():
    p = negative_projection(HermitianMatrix(np.diag([-1.0, 2.0])))
    assert np.allclose(p.entries, np.diag([1.0, 0.0]))
    zero = negative_projection(HermitianMatrix(np.diag([0.5, 3.0])))
    assert np.allclose(zero.entries, 0.0)
    p2 = negative_projection(HermitianMatrix([[0.5, 1.0], [1.0, 0.5]]))
    v = np.array([1.0, -1.0]) / math.sqrt(2)
    assert np.allclose(p2.entries, np.outer(v, v), atol=1e-12)
    assert p2.rank == 1


def test_negative_projection_zero_guard():
    with pytest.raises(KernelAtZero):
        negative_projection(HermitianMatrix(np.diag([1e-12, 1.0])), zero_tol=1e-9)


def test_negative_projection_scale_idempotence(rng):
    for _ in range(20):
        m = random_hermitian(rng, 5)
        p1 = negative_projection(m)
        p2 = negative_projection(HermitianMatrix(2.0 * m.entries))
        assert np.max(np.abs(p1.entries - p2.entries)) < 1e-9


def test_fredholm_index_examples():
    p = ProjectionMatrix(np.diag([1.0, 1.0, 0.0]))
    q = ProjectionMatrix(np.diag([1.0, 0.0, 0.0]))
    assert fredholm_index(p, p) == 0
    assert fredholm_index(p, q) == 1
    r = ProjectionMatrix(np.diag([1.0, 0.0]))
    s = ProjectionMatrix(np.diag([0.0, 1.0]))
    assert fredholm_index(r, s) == 0  # +1 and -1 eigenvalues cancel


def test_fredholm_index_antisymmetry_chain_trace(rng):
    for _ in range(200):
        n = int(rng.integers(2, 9))
        p = random_projection(rng, n, int(rng.integers(0, n + 1)))
        q = random_projection(rng, n, int(rng.integers(0, n + 1)))
        r = random_projection(rng, n, int(rng.integers(0, n + 1)))
        assert fredholm_index(p, q) == -fredholm_index(q, p)
        assert fredholm_index(p, r) == fredholm_index(p, q) + fredholm_index(q, r)
        tr = float(np.trace(p - q).real)
        assert abs(tr - round(tr)) < 1e-6
        assert fredholm_index(p, q) == round(tr)


def test_apply_scalar_function_examples(rng):
    m = random_hermitian(rng, 4)
    assert np.allclose(apply_scalar_function(m, lambda x: x).entries, m.entries,
                       atol=1e-12)
    d = apply_scalar_function(HermitianMatrix(np.diag([0.0, 2.0])),
                              lambda x: -1.0 / (x - 3.0))
    assert np.allclose(d.entries, np.diag([1.0 / 3.0, 1.0]))
    with pytest.raises(DomainViolation):
        apply_scalar_function(HermitianMatrix(np.diag([3.0, 0.0])),
                              lambda x: -1.0 / (x - 3.0))


def test_apply_scalar_function_trace_oracle(rng):
    f = math.tanh
    for _ in range(10):
        a = random_hermitian(rng, 6)
        b = random_hermitian(rng, 6)
        lhs = np.trace(apply_scalar_function(a, f).entries
                       - apply_scalar_function(b, f).entries).real
        rhs = sum(f(x) for x in np.linalg.eigvalsh(a.entries)) \
            - sum(f(x) for x in np.linalg.eigvalsh(b.entries))
        assert abs(lhs - rhs) < 1e-10


def test_det_complex_examples(rng):
    assert abs(det_complex(np.eye(3)) - 1.0) < 1e-14
    assert abs(det_complex(np.array([[0.0, 1.0], [1.0, 0.0]])) + 1.0) < 1e-14
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    by_eig = np.prod(np.linalg.eigvals(a))
    assert abs(det_complex(a) - by_eig) / abs(by_eig) < 1e-8


def test_pencil_real_zeros_examples():
    roots = pencil_real_zeros(HermitianMatrix(np.diag([-1.0, 1.0])), np.eye(2),
                              (0.0, 2.0))
    assert len(roots) == 1
    s, mult = roots[0]
    assert abs(s - 1.0) < 1e-12 and mult == 1
    assert pencil_real_zeros(HermitianMatrix(np.diag([-1.0, 1.0])),
                             np.zeros((2, 2)), (0.0, 2.0)) == []
    with pytest.raises(SingularM):
        pencil_real_zeros(HermitianMatrix(np.diag([0.0, 1.0])), np.eye(2), (0, 1))


def test_pencil_real_zeros_scan_oracle(rng):
    lo, hi = -2.0, 2.0
    for _ in range(3):
        m = random_hermitian(rng, 3)
        b = random_psd(rng, 3, rank=2)
        try:
            roots = pencil_real_zeros(m, b, (lo, hi))
        except SingularM:
            continue
        grid = np.arange(lo, hi, 1e-4)
        dets = np.array([np.real(np.linalg.det(m.entries + s * b)) for s in grid])
        flips = np.nonzero(np.sign(dets[:-1]) * np.sign(dets[1:]) < 0)[0]
        # every sign flip brackets a reported root and vice versa (simple roots)
        assert len(flips) == len(roots)
        for i, (s, mult) in enumerate(roots):
            assert mult == 1
            assert grid[flips[i]] <= s <= grid[flips[i] + 1]


def test_eigenvalue_sequences_examples():
    seq = eigenvalue_sequences(HermitianMatrix(np.diag([2.0, -3.0, 1.0])))
    assert seq.pos == (2.0, 1.0)
    assert seq.neg == (3.0,)
    zero = eigenvalue_sequences(HermitianMatrix(np.zeros((3, 3))))
    assert zero.pos == (0.0, 0.0, 0.0)
    assert zero.neg == (0.0, 0.0, 0.0)


def test_eigenvalue_sequence_stability(rng):
    # the sequence distance never exceeds the perturbation norm
    for _ in range(200):
        n = int(rng.integers(2, 9))
        a1 = random_hermitian(rng, n)
        a2 = random_hermitian(rng, n)
        diff = HermitianMatrix(a1.entries - a2.entries)
        s1, s2 = eigenvalue_sequences(a1), eigenvalue_sequences(a2)
        for p in (1, 2, np.inf):
            assert sequence_lp_distance(s1, s2, p) <= schatten_norm(diff, p) + 1e-10
