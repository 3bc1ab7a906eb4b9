"""Free Kraus operators, channels, free completion and ancilla reduction.

A Kraus operator K is superposition-free exactly when it maps every pure free
state onto a multiple of a single pure free state, i.e. when the matrix
``M = W' K V`` (free-frame representation) has at most one nonzero entry per
column. ``FreeKrausForm`` stores that sparse data: one coefficient and one
output label per input label.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import FreeBasis, tensor_basis
from .errors import (
    DimensionMismatch,
    NotFree,
    NotSubnormalized,
    NotTracePreserving,
)
from .linalg import as_complex_matrix, dagger, herm_eig, hermitian_part, partial_trace
from .states import DensityMatrix, free_expansion, is_free

TP_TOL = 1e-9
FREE_TOL = 1e-9


@dataclass(frozen=True)
class FreeKrausForm:
    """Coefficients c_k and index function f of a free Kraus operator.

    The represented operator is ``sum_k c_k |c_{f(k)}><c_k^perp|``.
    """

    coeffs: np.ndarray    # (d,) complex
    index_fn: np.ndarray  # (d,) int, output label per input label

    def matrix(self, basis: FreeBasis) -> np.ndarray:
        v, w = basis.vectors, basis.reciprocal
        out = np.zeros((basis.d, basis.d), dtype=complex)
        for k, (c, f) in enumerate(zip(self.coeffs, self.index_fn)):
            out += c * np.outer(v[:, f], w[:, k].conj())
        return out


@dataclass(frozen=True)
class Channel:
    """Kraus-operator collection, trace non-increasing by construction."""

    kraus: tuple

    def __post_init__(self):
        ops = tuple(as_complex_matrix(k, "Kraus operator") for k in self.kraus)
        if not ops:
            raise DimensionMismatch("channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise DimensionMismatch("Kraus operators must share one shape")
        object.__setattr__(self, "kraus", ops)
        wmin = float(np.linalg.eigvalsh(hermitian_part(self.defect))[0])
        if wmin < -TP_TOL:
            raise NotSubnormalized(f"sum K'K exceeds identity by {-wmin:.3e}")

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def defect(self) -> np.ndarray:
        """1 - sum K'K; zero for a trace-preserving channel."""
        d = self.kraus[0].shape[1]
        acc = np.eye(d, dtype=complex)
        for k in self.kraus:
            acc -= dagger(k) @ k
        return acc

    @property
    def is_trace_preserving(self) -> bool:
        return bool(np.linalg.norm(self.defect) <= TP_TOL)


def is_free_kraus(k: np.ndarray, basis: FreeBasis, tol: float = FREE_TOL) -> FreeKrausForm | None:
    """Recognize a free Kraus operator; None when it is not free.

    Column j of ``W' K V`` holds the free-frame coefficients of ``K|c_j>``;
    freeness means each column has at most one entry above tol. Zero columns
    get coefficient 0 with output label j.
    """
    k = as_complex_matrix(k, "k")
    if k.shape != (basis.d, basis.d):
        raise DimensionMismatch(f"operator shape {k.shape} != ({basis.d}, {basis.d})")
    m = dagger(basis.reciprocal) @ k @ basis.vectors
    coeffs = np.zeros(basis.d, dtype=complex)
    index_fn = np.arange(basis.d)
    for j in range(basis.d):
        live = np.where(np.abs(m[:, j]) > tol)[0]
        if live.size > 1:
            return None
        if live.size == 1:
            coeffs[j] = m[live[0], j]
            index_fn[j] = live[0]
    return FreeKrausForm(coeffs=coeffs, index_fn=index_fn)


def apply_channel(ch: Channel, rho: DensityMatrix) -> DensityMatrix:
    """Apply a trace-preserving channel: sum K rho K'."""
    if not ch.is_trace_preserving:
        raise NotTracePreserving(f"defect norm {np.linalg.norm(ch.defect):.3e}")
    if rho.dim != ch.dim:
        raise DimensionMismatch(f"state dimension {rho.dim} != channel dimension {ch.dim}")
    out = np.zeros_like(rho.mat)
    for k in ch.kraus:
        out += k @ rho.mat @ dagger(k)
    return DensityMatrix(out)


def measure_selective(ch: Channel, rho: DensityMatrix) -> list[tuple[float, DensityMatrix]]:
    """Selective measurement outcomes (p_n, rho_n); outcomes below 1e-12 dropped."""
    if rho.dim != ch.dim:
        raise DimensionMismatch(f"state dimension {rho.dim} != channel dimension {ch.dim}")
    outcomes = []
    total = 0.0
    for k in ch.kraus:
        m = k @ rho.mat @ dagger(k)
        p = float(np.trace(m).real)
        total += p
        if p >= 1e-12:
            outcomes.append((p, DensityMatrix(m / p)))
    if total > 1.0 + TP_TOL:
        raise NotSubnormalized(f"outcome probabilities sum to {total:.12g}")
    return outcomes


def complete_free(partial, basis: FreeBasis) -> list[np.ndarray]:
    """Free Kraus operators completing a trace non-increasing set to trace preserving.

    The residue ``1 - sum K'K`` is eigendecomposed and each eigenvector |n>
    with weight p_n contributes ``sqrt(p_n) |c_1><n|``; eigenvalues below
    1e-12 are dropped.
    """
    ops = [as_complex_matrix(k, "Kraus operator") for k in partial]
    d = basis.d
    residue = np.eye(d, dtype=complex)
    for k in ops:
        if k.shape != (d, d):
            raise DimensionMismatch(f"operator shape {k.shape} != ({d}, {d})")
        residue -= dagger(k) @ k
    res = herm_eig(hermitian_part(residue))
    if res.eigenvalues[0] < -TP_TOL:
        raise NotSubnormalized(f"residue eigenvalue {res.eigenvalues[0]:.3e} < 0")
    target = basis.vectors[:, 0]
    completion = []
    for p, vec in zip(res.eigenvalues, res.eigenvectors.T):
        if p > 1e-12:
            completion.append(np.sqrt(p) * np.outer(target, vec.conj()))
    return completion


def free_channel(operators, basis: FreeBasis) -> Channel:
    """Trace-preserving channel from free Kraus operators plus their free completion."""
    ops = list(operators)
    return Channel(tuple(ops + complete_free(ops, basis)))


def is_mfo(ch: Channel, basis: FreeBasis, tol: float = FREE_TOL) -> bool:
    """True iff the channel maps every free state to a free state.

    Checking the d pure free states suffices: the free set is their convex
    hull and the channel is linear.
    """
    if not ch.is_trace_preserving:
        raise NotTracePreserving(f"defect norm {np.linalg.norm(ch.defect):.3e}")
    for i in range(basis.d):
        c = basis.state(i)
        out = apply_channel(ch, DensityMatrix(np.outer(c, c.conj())))
        if not is_free(out, basis, tol):
            return False
    return True


def reduce_ancilla(
    l_op: np.ndarray,
    sigma_b: DensityMatrix,
    basis_a: FreeBasis,
    basis_b: FreeBasis,
    tol: float = FREE_TOL,
) -> list[np.ndarray]:
    """Free Kraus operators on A reproducing ``tr_B L (rho (x) sigma_B) L'``.

    Requires L free on the product basis and sigma_B free on basis B; the
    returned family is indexed by the free label of sigma_B and an
    orthonormal-basis index of B.
    """
    da, db = basis_a.d, basis_b.d
    l_op = as_complex_matrix(l_op, "l_op")
    if l_op.shape != (da * db, da * db):
        raise DimensionMismatch(f"operator shape {l_op.shape} != ({da * db},)*2")
    product = tensor_basis(basis_a, basis_b)
    form = is_free_kraus(l_op, product, tol)
    if form is None:
        raise NotFree("L is not free on the product basis")
    if not is_free(sigma_b, basis_b, tol):
        raise NotFree("sigma_B is not free")
    weights = np.clip(np.diag(free_expansion(sigma_b, basis_b).coeffs).real, 0.0, None)

    va, wa = basis_a.vectors, basis_a.reciprocal
    vb = basis_b.vectors
    out = []
    for j in range(db):
        if weights[j] < 1e-14:
            continue
        for x in range(db):
            f = np.zeros((da, da), dtype=complex)
            for i in range(da):
                k_in = i * db + j
                g, h = divmod(int(form.index_fn[k_in]), db)
                amp = np.sqrt(weights[j]) * form.coeffs[k_in] * vb[x, h]
                f += amp * np.outer(va[:, g], wa[:, i].conj())
            out.append(f)
    return out


def reduced_action(l_op: np.ndarray, rho_a: np.ndarray, sigma_b: DensityMatrix,
                   dim_a: int, dim_b: int) -> np.ndarray:
    """Direct evaluation of ``tr_B L (rho_A (x) sigma_B) L'`` for verification."""
    joint = np.kron(np.asarray(rho_a, dtype=complex), sigma_b.mat)
    return partial_trace(l_op @ joint @ dagger(l_op), dim_a, dim_b, keep="a")
