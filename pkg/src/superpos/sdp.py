"""Embedded interior-point solver for the two small LMI shapes the theory needs.

``solve_lmi`` handles "maximize sum p_n subject to sum p_n A_n <= 1, p >= 0"
with PSD data A_n and extracts a feasible dual certificate from the central
path, so every reported optimum comes with a proven upper bound.
``solve_cover`` handles the mirror problem "minimize sum x_i subject to
sum x_i B_i >= rho, x >= 0" used by the robustness measure.

Both run a log-det barrier with damped Newton steps; the variable counts are
at most a few dozen and the matrices at most 8x8, so no sparsity or scaling
tricks are required.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import BadData, NoConvergence
from .linalg import as_complex_matrix, herm_eig, hermitian_part

DEFAULT_GAP_TOL = 1e-7
_PSD_DATA_TOL = 1e-9


@dataclass(frozen=True)
class LmiProblem:
    """Data of "maximize sum p_n s.t. sum p_n A_n <= 1": the PSD matrices A_n."""

    operators: tuple
    dim: int

    @staticmethod
    def from_matrices(mats) -> "LmiProblem":
        ops = tuple(hermitian_part(as_complex_matrix(m, "A_n")) for m in mats)
        if not ops:
            raise BadData("need at least one constraint matrix")
        dim = ops[0].shape[0]
        for m in ops:
            if m.shape != (dim, dim):
                raise BadData("constraint matrices must share one square shape")
            wmin = float(np.linalg.eigvalsh(m)[0])
            if wmin < -_PSD_DATA_TOL * max(1.0, float(np.linalg.norm(m))):
                raise BadData(f"constraint matrix has negative eigenvalue {wmin:.3e}")
        return LmiProblem(operators=ops, dim=dim)


@dataclass(frozen=True)
class SdpSolution:
    """Primal point, dual certificate and duality gap of one solve."""

    p: np.ndarray
    primal: float
    dual_matrix: np.ndarray
    dual: float
    gap: float
    value: float | None = None        # primal clamped to [0, 1] where meaningful
    completion: tuple | None = None   # free completion when a deterministic map exists

    def with_extras(self, value: float | None = None, completion=None) -> "SdpSolution":
        return replace(self, value=value, completion=completion)


def _logdet_pd(m: np.ndarray) -> float:
    """log det of a PD matrix; -inf when the Cholesky factorization fails."""
    try:
        c = np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return -np.inf
    return 2.0 * float(np.sum(np.log(np.diag(c).real)))


def _inv_pd(m: np.ndarray) -> np.ndarray:
    """Inverse of a (numerically) PD matrix with an eigenvalue floor fallback."""
    try:
        inv = np.linalg.inv(m)
        if np.all(np.isfinite(inv)):
            return hermitian_part(inv)
    except np.linalg.LinAlgError:
        pass
    w, u = np.linalg.eigh(hermitian_part(m))
    w = np.clip(w, 1e-300, None)
    return hermitian_part((u / w) @ u.conj().T)


def _center(cost: np.ndarray, m0: np.ndarray, mats: list[np.ndarray], x: np.ndarray,
            mu: float, max_newton: int = 80) -> tuple[np.ndarray, np.ndarray]:
    """Damped Newton for min cost.x - mu*(logdet(m0 + sum x mats) + sum log x).

    Returns the centered point and the inverse slack matrix there.
    """
    n = len(mats)

    def slack(xv):
        m = m0.copy()
        for xi, mi in zip(xv, mats):
            m += xi * mi
        return m

    def value(xv, m):
        logdet = _logdet_pd(m)
        if not np.isfinite(logdet):
            return np.inf
        return float(cost @ xv) - mu * (logdet + float(np.sum(np.log(xv))))

    m = slack(x)
    for _ in range(max_newton):
        minv = _inv_pd(m)
        prods = [minv @ mi for mi in mats]
        grad = np.array([cost[i] - mu * np.trace(prods[i]).real - mu / x[i] for i in range(n)])
        hess = mu * np.array([[np.sum(prods[i] * prods[j].T).real for j in range(n)]
                              for i in range(n)])
        hess[np.diag_indices(n)] += mu / x**2
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            break
        decrement = float(-grad @ step)
        if decrement <= 1e-12:
            break
        f0 = value(x, m)
        t = 1.0
        while t > 1e-13:
            xn = x + t * step
            if np.all(xn > 0):
                mn = slack(xn)
                if np.linalg.eigvalsh(mn)[0] > 0 and value(xn, mn) <= f0 - 0.1 * t * decrement:
                    x, m = xn, mn
                    break
            t *= 0.5
        else:
            break
    return x, _inv_pd(m)


def solve_lmi(problem: LmiProblem, gap_tol: float = DEFAULT_GAP_TOL,
              max_outer: int = 40, dual_candidates=()) -> SdpSolution:
    """Maximize sum p_n subject to sum p_n A_n <= 1, p >= 0.

    The dual matrix comes from the best feasible candidate among: the central
    path point mu * S(p)^{-1}, its compression onto the near-null space of
    the slack (which carries the dual support at degenerate optima), the
    scaled identity, and any caller-supplied matrices. Each candidate is
    projected onto the PSD cone and rescaled so tr(Lambda A_n) >= 1; the
    smallest certified trace bounds the optimum and ``gap`` is its distance
    to the primal value.
    """
    ops = problem.operators
    n, d = len(ops), problem.dim
    norm_sum = sum(float(np.linalg.norm(a, 2)) for a in ops)
    x = np.full(n, 0.5 / (norm_sum + 1.0))
    m0 = np.eye(d, dtype=complex)
    mats = [-a for a in ops]
    cost = -np.ones(n)

    static: list[np.ndarray] = []
    min_trace = min(float(np.trace(a).real) for a in ops)
    if min_trace > 0:
        static.append(np.eye(d, dtype=complex) / min_trace)
    for cand in dual_candidates:
        static.append(as_complex_matrix(cand, "dual candidate"))

    mu = 1.0
    best: SdpSolution | None = None
    for _ in range(max_outer):
        x, sinv = _center(cost, m0, mats, x, mu)
        primal = float(np.sum(x))
        slack = m0 + sum(xi * mi for xi, mi in zip(x, mats))
        candidates = list(static) + [mu * sinv]
        polished = _polish_dual(ops, x, slack)
        if polished is not None:
            candidates.append(polished)
        for raw in candidates:
            lam = _purify_dual_upper(raw, ops)
            if lam is None:
                continue
            bound = float(np.trace(lam).real)
            gap = bound - primal
            if best is None or gap < best.gap:
                best = SdpSolution(p=x.copy(), primal=primal, dual_matrix=lam,
                                   dual=bound, gap=gap)
        if best is not None and best.gap <= gap_tol:
            return SdpSolution(p=x.copy(), primal=primal, dual_matrix=best.dual_matrix,
                               dual=best.dual, gap=best.dual - primal)
        mu *= 0.1
    if best is not None and best.gap <= 10 * gap_tol:
        return best
    raise NoConvergence(f"duality gap {best.gap if best else np.inf:.3e} above {gap_tol:.1e}")


def _purify_dual_upper(lam: np.ndarray, ops) -> np.ndarray | None:
    """Project onto the PSD cone and rescale so tr(lam A_n) >= 1 for all n."""
    res = herm_eig(hermitian_part(lam))
    w = np.clip(res.eigenvalues, 0.0, None)
    lam = (res.eigenvectors * w) @ res.eigenvectors.conj().T
    vals = [float(np.trace(lam @ a).real) for a in ops]
    m = min(vals)
    if m <= 0:
        return None
    return lam / m if m < 1.0 else lam


def _hermitian_coords(k: int) -> list[np.ndarray]:
    """Real orthonormal basis of k x k Hermitian matrices."""
    out = []
    for i in range(k):
        e = np.zeros((k, k), dtype=complex)
        e[i, i] = 1.0
        out.append(e)
    for i in range(k):
        for j in range(i + 1, k):
            e = np.zeros((k, k), dtype=complex)
            e[i, j] = e[j, i] = 1 / np.sqrt(2)
            out.append(e)
            e = np.zeros((k, k), dtype=complex)
            e[i, j] = -1j / np.sqrt(2)
            e[j, i] = 1j / np.sqrt(2)
            out.append(e)
    return out


def _polish_dual(ops, x: np.ndarray, slack: np.ndarray) -> np.ndarray | None:
    """Solve the complementary-slackness system for the dual on null(slack).

    Any PSD matrix supported on the null space of the optimal slack whose
    pairings with the active constraints equal one has trace equal to the
    primal optimum, so a least-squares solve there recovers the exact dual
    even when the central-path estimate is noisy.
    """
    w, u = np.linalg.eigh(hermitian_part(slack))
    null_mask = w <= 1e-6 * max(float(w[-1]), 1.0)
    k = int(np.sum(null_mask))
    if k == 0:
        return None
    nbasis = u[:, null_mask]
    active = np.where(x > 1e-7 * max(float(x.max()), 1e-300))[0]
    if active.size == 0:
        return None
    compressed = [nbasis.conj().T @ ops[n] @ nbasis for n in active]
    coords = _hermitian_coords(k)
    rows = np.array([[np.trace(c @ b).real for c in coords] for b in compressed])
    target = np.ones(len(compressed))
    sol, *_ = np.linalg.lstsq(rows, target, rcond=None)
    xmat = sum(s * c for s, c in zip(sol, coords))
    return nbasis @ xmat @ nbasis.conj().T


def verify_dual(lam: np.ndarray, problem: LmiProblem,
                tol: float = 1e-9) -> tuple[bool, float]:
    """Check dual feasibility of lam and return (feasible, tr lam).

    Feasible means lam >= -tol and tr(lam A_n) >= 1 - tol for every n; the
    trace of any feasible lam upper-bounds the primal optimum.
    """
    lam = hermitian_part(as_complex_matrix(lam, "lam"))
    bound = float(np.trace(lam).real)
    if float(np.linalg.eigvalsh(lam)[0]) < -tol:
        return False, bound
    for a in problem.operators:
        if float(np.trace(lam @ a).real) < 1.0 - tol:
            return False, bound
    return True, bound


@dataclass(frozen=True)
class CoverSolution:
    """Solution of "minimize sum x_i s.t. sum x_i B_i >= rho, x >= 0"."""

    x: np.ndarray
    primal: float
    dual_matrix: np.ndarray
    dual: float
    gap: float


def solve_cover(rho: np.ndarray, mats, gap_tol: float = 1e-8,
                max_outer: int = 40) -> CoverSolution:
    """Minimize sum x_i subject to sum x_i B_i >= rho, x >= 0 (PSD data B_i).

    The dual "maximize tr(rho Y) s.t. tr(B_i Y) <= 1, Y >= 0" is extracted
    from the central path the same way as in ``solve_lmi`` and certifies a
    lower bound on the optimum.
    """
    rho = hermitian_part(as_complex_matrix(rho, "rho"))
    ops = [hermitian_part(as_complex_matrix(b, "B_i")) for b in mats]
    n, d = len(ops), rho.shape[0]
    total = np.sum(ops, axis=0)
    if float(np.linalg.eigvalsh(total)[0]) <= 0:
        raise BadData("constraint matrices do not span a positive definite sum")
    t = 1.0
    while np.linalg.eigvalsh(t * total - rho)[0] <= 1e-12:
        t *= 2.0
        if t > 1e12:
            raise BadData("could not find a strictly feasible start")
    x = np.full(n, t)
    cost = np.ones(n)

    mu = 1.0
    best: CoverSolution | None = None
    for _ in range(max_outer):
        x, minv = _center(cost, -rho, ops, x, mu)
        primal = float(np.sum(x))
        y = _purify_dual_lower(mu * minv, ops)
        dual_val = float(np.trace(y @ rho).real)
        gap = primal - dual_val
        if best is None or gap < best.gap:
            best = CoverSolution(x=x.copy(), primal=primal, dual_matrix=y,
                                 dual=dual_val, gap=gap)
        if gap <= gap_tol:
            return best
        mu *= 0.1
    if best is not None and best.gap <= 10 * gap_tol:
        return best
    raise NoConvergence(f"duality gap {best.gap if best else np.inf:.3e} above {gap_tol:.1e}")


def _purify_dual_lower(y: np.ndarray, ops) -> np.ndarray:
    """Project onto the PSD cone and rescale so tr(B_i y) <= 1 for all i."""
    res = herm_eig(hermitian_part(y))
    w = np.clip(res.eigenvalues, 0.0, None)
    y = (res.eigenvectors * w) @ res.eigenvectors.conj().T
    m = max(float(np.trace(y @ b).real) for b in ops)
    return y / m if m > 1.0 else y
