import numpy as np
import pytest

from superpos.basis import orthonormal_basis, symmetric_basis_d3, tensor_basis
from superpos.errors import NotFree, NotSubnormalized, NotTracePreserving
from superpos.kraus import (
    Channel,
    apply_channel,
    complete_free,
    free_channel,
    is_free_kraus,
    is_mfo,
    measure_selective,
    reduce_ancilla,
    reduced_action,
)
from superpos.linalg import dagger
from superpos.qubit import build_phi, channel_from_bloch, qubit_free_basis
from superpos.sampling import (
    haar_state,
    make_rng,
    random_basis,
    random_free_operator,
    random_free_state,
    random_subnormalized_free_ops,
)
from superpos.states import DensityMatrix, PureState, is_free


def test_identity_is_free():
    b = qubit_free_basis(0.5)
    form = is_free_kraus(np.eye(2, dtype=complex), b)
    assert form is not None
    assert np.allclose(form.coeffs, [1, 1], atol=1e-12)
    assert list(form.index_fn) == [0, 1]


def test_exact_transformer_is_free():
    # sqrt(p) sum_j (phi_f(j)/psi_j)|c_f(j)><c_j^perp| is free for any index map
    rng = make_rng(401)
    b = random_basis(3, rng)
    psi = haar_state(3, rng)
    phi = haar_state(3, rng)
    src = b.to_free_frame(psi.amp)
    dst = b.to_free_frame(phi.amp)
    f = [2, 0, 1]
    k = np.zeros((3, 3), dtype=complex)
    for j in range(3):
        k += np.sqrt(0.3) * (dst[f[j]] / src[j]) * np.outer(b.vectors[:, f[j]],
                                                            b.reciprocal[:, j].conj())
    form = is_free_kraus(k, b)
    assert form is not None
    assert np.abs(form.matrix(b) - k).max() < 1e-9
    assert np.linalg.norm(k @ psi.amp - np.sqrt(0.3) * phi.amp) < 1e-9


def test_hadamard_not_free_on_overlapping_basis():
    b = qubit_free_basis(0.5)
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert is_free_kraus(h, b) is None


def test_roundtrip_random_free_operators():
    rng = make_rng(402)
    for _ in range(1000):
        d = int(rng.integers(2, 5))
        b = random_basis(d, rng)
        k = random_free_operator(b, rng)
        form = is_free_kraus(k, b)
        assert form is not None
        assert np.abs(form.matrix(b) - k).max() <= 1e-9


def test_apply_channel_identity():
    rng = make_rng(403)
    rho = haar_state(2, rng).density()
    ch = Channel((np.eye(2, dtype=complex),))
    assert np.abs(apply_channel(ch, rho).mat - rho.mat).max() < 1e-12


def test_apply_channel_two_row_operators():
    # two row-type incoherent operators map |+><+| onto the first basis projector
    k1 = np.array([[1, 1], [0, 0]]) / np.sqrt(2)
    k2 = np.array([[1, -1], [0, 0]]) / np.sqrt(2)
    ch = Channel((k1, k2))
    assert ch.is_trace_preserving
    plus = PureState(np.array([1, 1]) / np.sqrt(2))
    out = apply_channel(ch, plus.density())
    assert np.abs(out.mat - np.diag([1.0, 0.0])).max() < 1e-12


def test_apply_channel_requires_trace_preserving():
    ch = Channel((np.sqrt(0.5) * np.eye(2, dtype=complex),))
    with pytest.raises(NotTracePreserving):
        apply_channel(ch, PureState(np.array([1.0, 0.0])).density())


def test_measure_selective_identity():
    rho = PureState(np.array([1.0, 0.0])).density()
    outcomes = measure_selective(Channel((np.eye(2, dtype=complex),)), rho)
    assert len(outcomes) == 1
    p, out = outcomes[0]
    assert abs(p - 1.0) < 1e-12
    assert np.abs(out.mat - rho.mat).max() < 1e-12


def test_measure_selective_uniform_on_free_input():
    from superpos.game import build_game

    b = symmetric_basis_d3()
    spec = build_game(b)
    rho = random_free_state(b, make_rng(404))
    outcomes = measure_selective(Channel(spec.informative + spec.restart), rho)
    informative = outcomes[: b.d]
    for p, out in informative:
        assert abs(p - spec.p / b.d) < 1e-10
        assert np.abs(out.mat - rho.mat).max() < 1e-9  # no information leaks


def test_complete_free_trace_preserving_input():
    b = symmetric_basis_d3()
    u = np.eye(3, dtype=complex)
    assert complete_free([u], b) == []


def test_complete_free_uniform_contraction():
    b = symmetric_basis_d3()
    ops = [np.sqrt(0.5) * np.eye(3, dtype=complex)]
    comp = complete_free(ops, b)
    total = sum(dagger(k) @ k for k in comp)
    assert np.abs(total - 0.5 * np.eye(3)).max() < 1e-9
    assert all(is_free_kraus(k, b) is not None for k in comp)


def test_complete_free_matches_explicit_pair():
    # the diagonal/antidiagonal operators generating the maximal state leave
    # exactly the residue that the two row/flip operators of the channel carry
    from superpos.qubit import generate_from_m2

    a, theta, phi = 0.5, np.pi / 2, 0.0
    ch = generate_from_m2(theta, phi, a)
    k1, k2, k3, k4 = ch.kraus
    partial = [k2, k4]
    residue = np.eye(2, dtype=complex) - sum(dagger(k) @ k for k in partial)
    explicit = dagger(k1) @ k1 + dagger(k3) @ k3
    assert np.abs(residue - explicit).max() < 1e-10
    comp = complete_free(partial, qubit_free_basis(a))
    total = sum(dagger(k) @ k for k in list(partial) + comp)
    assert np.abs(total - np.eye(2)).max() < 1e-9
    assert all(is_free_kraus(k, qubit_free_basis(a)) is not None for k in comp)


def test_complete_free_random_sets_all_free():
    rng = make_rng(405)
    for trial in range(300):
        d = int(rng.integers(2, 5))
        b = orthonormal_basis(d) if trial % 4 == 0 else random_basis(d, rng)
        ops = random_subnormalized_free_ops(b, rng, n_ops=int(rng.integers(1, 4)))
        comp = complete_free(ops, b)
        total = sum(dagger(k) @ k for k in list(ops) + comp)
        assert np.abs(total - np.eye(d)).max() <= 1e-9
        assert all(is_free_kraus(k, b, 1e-8) is not None for k in comp)


def test_complete_free_rejects_oversized_sets():
    b = qubit_free_basis(0.2)
    with pytest.raises(NotSubnormalized):
        complete_free([np.sqrt(1.5) * np.eye(2, dtype=complex)], b)


def test_freeness_closure_on_free_states():
    rng = make_rng(406)
    for _ in range(300):
        d = int(rng.integers(2, 5))
        b = random_basis(d, rng)
        k = random_free_operator(b, rng)
        rho = random_free_state(b, rng)
        out = k @ rho.mat @ dagger(k)
        tr = np.trace(out).real
        if tr < 1e-8:
            continue
        assert is_free(DensityMatrix(out / tr), b, 1e-8)


def test_fo_channels_are_mfo():
    rng = make_rng(407)
    for _ in range(100):
        d = int(rng.integers(2, 4))
        b = random_basis(d, rng)
        ops = random_subnormalized_free_ops(b, rng, n_ops=2)
        ch = free_channel(ops, b)
        assert ch.is_trace_preserving
        assert is_mfo(ch, b, 1e-8)


def test_is_mfo_examples():
    b = qubit_free_basis(0.5)
    assert is_mfo(Channel((np.eye(2, dtype=complex),)), b)
    # the free-state-preserving Bloch channel is maximally free
    ch = channel_from_bloch(build_phi(0.5, np.pi / 4, 0.3))
    assert is_mfo(ch, b, 1e-8)
    # replacing every state by |+><+| is not
    plus = np.array([1, 1]) / np.sqrt(2)
    replace = Channel((np.outer(plus, [1, 0]), np.outer(plus, [0, 1])))
    assert not is_mfo(replace, b)


def test_reduce_ancilla_identity():
    rng = make_rng(408)
    ba, bb = random_basis(2, rng), random_basis(2, rng)
    sigma = DensityMatrix(np.outer(bb.state(0), bb.state(0).conj()))
    fam = reduce_ancilla(np.eye(4, dtype=complex), sigma, ba, bb)
    rho = haar_state(2, rng).density()
    out = sum(f @ rho.mat @ dagger(f) for f in fam)
    assert np.abs(out - rho.mat).max() < 1e-9


def test_reduce_ancilla_swap_like_operator():
    ba = qubit_free_basis(0.3)
    bb = qubit_free_basis(0.3)
    prod = tensor_basis(ba, bb)
    # |c_1 c_1><(c_1 c_1)^perp| + |c_2 c_1><(c_2 c_2)^perp|: a free projector family
    l_op = (np.outer(prod.vectors[:, 0], prod.reciprocal[:, 0].conj())
            + np.outer(prod.vectors[:, 2], prod.reciprocal[:, 3].conj()))
    sigma = DensityMatrix(np.outer(bb.state(0), bb.state(0).conj()))
    fam = reduce_ancilla(l_op, sigma, ba, bb)
    for i in range(2):
        for j in range(2):
            rho = np.outer(ba.vectors[:, i], ba.vectors[:, j].conj())
            direct = reduced_action(l_op, rho, sigma, 2, 2)
            via = sum(f @ rho @ dagger(f) for f in fam)
            assert np.abs(direct - via).max() < 1e-9
    assert all(is_free_kraus(f, ba, 1e-8) is not None for f in fam)


def test_reduce_ancilla_random_spanning_set():
    rng = make_rng(409)
    for _ in range(50):
        ba, bb = random_basis(2, rng), random_basis(2, rng)
        prod = tensor_basis(ba, bb)
        l_op = random_free_operator(prod, rng)
        l_op /= np.linalg.norm(l_op, 2) * 1.1
        sigma = random_free_state(bb, rng)
        fam = reduce_ancilla(l_op, sigma, ba, bb)
        for i in range(2):
            for j in range(2):
                rho = np.outer(ba.vectors[:, i], ba.vectors[:, j].conj())
                direct = reduced_action(l_op, rho, sigma, 2, 2)
                via = sum(f @ rho @ dagger(f) for f in fam)
                assert np.abs(direct - via).max() <= 1e-9
        assert all(is_free_kraus(f, ba, 1e-7) is not None for f in fam)


def test_reduce_ancilla_rejects_non_free_inputs():
    ba, bb = qubit_free_basis(0.4), qubit_free_basis(0.4)
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    with pytest.raises(NotFree):
        reduce_ancilla(np.kron(h, h), DensityMatrix(np.outer(bb.state(0), bb.state(0).conj())),
                       ba, bb)
    plus = PureState(np.array([1, 1]) / np.sqrt(2)).density()
    with pytest.raises(NotFree):
        reduce_ancilla(np.eye(4, dtype=complex), plus, ba, bb)
