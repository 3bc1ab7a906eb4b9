import numpy as np
import pytest

from superpos.errors import NonHermitian
from superpos.linalg import (
    dagger,
    fidelity,
    herm_eig,
    hermitian_part,
    partial_trace,
    psd_check,
    svd,
)
from superpos.sampling import make_rng


def characteristic_roots(h: np.ndarray) -> np.ndarray:
    """Independent oracle: Faddeev-LeVerrier coefficients, roots via the companion matrix."""
    n = h.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(h)
    for k in range(1, n + 1):
        m = h @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(h @ m).real / k)
    return np.sort(np.roots(coeffs).real)


def test_herm_eig_identity():
    res = herm_eig(np.eye(3, dtype=complex))
    assert np.allclose(res.eigenvalues, [1, 1, 1], atol=1e-12)


def test_herm_eig_pauli_x():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    res = herm_eig(sx)
    assert np.allclose(res.eigenvalues, [-1, 1], atol=1e-12)


def test_herm_eig_symmetric_gram():
    # Gram matrix (1 + delta_ij)/2 has eigenvalues (1/2, 1/2, 2)
    g = 0.5 * (np.eye(3) + np.ones((3, 3)))
    res = herm_eig(g)
    assert np.allclose(res.eigenvalues, [0.5, 0.5, 2.0], atol=1e-12)
    assert np.allclose(characteristic_roots(g.astype(complex)), res.eigenvalues, atol=1e-8)


def test_herm_eig_matches_characteristic_polynomial():
    rng = make_rng(101)
    for _ in range(200):
        d = int(rng.integers(2, 5))
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        h = hermitian_part(g)
        res = herm_eig(h)
        assert np.abs(res.eigenvalues - characteristic_roots(h)).max() < 1e-8


def test_herm_eig_invariants_random():
    rng = make_rng(102)
    for _ in range(1000):
        d = int(rng.integers(2, 7))
        h = hermitian_part(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
        res = herm_eig(h)
        scale = max(np.linalg.norm(h), 1e-300)
        v = res.eigenvectors
        assert np.linalg.norm(v @ (res.eigenvalues[:, None] * dagger(v)) - h) <= 1e-9 * scale
        assert np.linalg.norm(dagger(v) @ v - np.eye(d)) <= 1e-10
        assert np.all(np.diff(res.eigenvalues) >= -1e-14)
        for lam, vec in zip(res.eigenvalues, v.T):
            assert np.linalg.norm(h @ vec - lam * vec) <= 1e-10 * scale


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_svd_zero_matrix():
    _, s, _ = svd(np.zeros((3, 3)))
    assert np.allclose(s, 0.0)


def test_svd_rank_one():
    rng = make_rng(103)
    u = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    u /= np.linalg.norm(u)
    v /= np.linalg.norm(v)
    _, s, _ = svd(np.outer(u, v.conj()))
    assert np.allclose(s, [1, 0, 0, 0], atol=1e-12)


def test_svd_triangular_basis_matrix():
    # columns (1,0) and (sin, cos) at theta = pi/3; singular values from the 2x2 Gram
    st, ct = np.sin(np.pi / 3), np.cos(np.pi / 3)
    m = np.array([[1, st], [0, ct]], dtype=complex)
    _, s, _ = svd(m)
    expected = np.sqrt([1 + st, 1 - st])
    assert np.allclose(np.sort(s), np.sort(expected), atol=1e-12)


def test_svd_invariants_random():
    rng = make_rng(104)
    for _ in range(1000):
        d = int(rng.integers(1, 7))
        m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        u, s, v = svd(m)
        assert np.linalg.norm(u @ (s[:, None] * dagger(v)) - m) <= 1e-10 * max(1, np.linalg.norm(m))
        assert np.all(np.diff(s) <= 1e-14)
        assert np.all(s >= 0)


def test_psd_check_examples():
    assert psd_check(np.eye(4))
    assert not psd_check(np.diag([1.0, -0.1]), tol=1e-9)


def test_psd_check_choi_of_phi():
    from superpos.qubit import build_phi, choi

    c = choi(build_phi(0.3, np.pi / 4, 0.0))
    assert psd_check(c, tol=1e-9)


def test_fidelity_extremes():
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert abs(fidelity(rho, rho) - 1.0) < 1e-12
    assert abs(fidelity(rho, np.diag([0.0, 1.0]).astype(complex))) < 1e-12


def test_partial_trace_of_product():
    rng = make_rng(105)
    a = hermitian_part(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    b = hermitian_part(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    joint = np.kron(a, b)
    assert np.allclose(partial_trace(joint, 2, 3, "a"), a * np.trace(b), atol=1e-12)
    assert np.allclose(partial_trace(joint, 2, 3, "b"), b * np.trace(a), atol=1e-12)
