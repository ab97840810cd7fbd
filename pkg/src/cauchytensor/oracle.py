"""Brute-force checks that share no evaluation path with the fast code.

Everything here works from the literal ``n**m`` array (filled entry by entry
through :meth:`SymmetricTensor.entry`), or from the generating vector
directly, so disagreements point at real bugs rather than shared ones.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from itertools import product

import numpy as np

from .errors import BudgetExceeded, OrderNotTwo, PreconditionViolated, QuadratureFailure
from .tensor import GeneratingVector, SymmetricTensor, build_cauchy

__all__ = [
    "IntegralCheck",
    "integral_identity_check",
    "sphere_min",
    "naive_contract",
    "dense_matrix_eig",
    "jacobi_eigh",
    "hankel_condition_holds",
]

NAIVE_BUDGET = 10**7


def _literal_dense(T: SymmetricTensor, budget: int = NAIVE_BUDGET) -> np.ndarray:
    n, m = T.dim, T.order
    if n**m > budget:
        raise BudgetExceeded(n**m, budget)
    D = np.empty((n,) * m)
    for tup in product(range(n), repeat=m):
        D[tup] = T.entry(tup)
    return D


def naive_contract(T: SymmetricTensor, x, mode: str = "full", budget: int = NAIVE_BUDGET):
    """Contract ``T`` with ``x`` by summing over every index tuple.

    ``mode="full"`` gives ``T x^m``; ``mode="first-slot"`` gives the vector
    ``T x^(m-1)``.
    """
    x = np.asarray(x, dtype=float)
    n, m = T.dim, T.order
    if n**m > budget:
        raise BudgetExceeded(n**m, budget)
    if mode == "full":
        return math.fsum(T.entry(t) * math.prod(x[i] for i in t) for t in product(range(n), repeat=m))
    if mode == "first-slot":
        out = np.empty(n)
        for i in range(n):
            out[i] = math.fsum(
                T.entry((i,) + t) * math.prod(x[j] for j in t)
                for t in product(range(n), repeat=m - 1)
            )
        return out
    raise ValueError(f"unknown mode {mode!r}")


# -- minimisation on the unit sphere -----------------------------------------


def _contract_batch(D: np.ndarray, X: np.ndarray, times: int) -> np.ndarray:
    """Contract the trailing ``times`` axes of ``D`` with each row of ``X``."""
    b, n = X.shape
    Y = (D.reshape(-1, n) @ X.T).T
    for _ in range(times - 1):
        Y = np.einsum("bkj,bj->bk", Y.reshape(b, -1, n), X)
    return Y.reshape((b,) + D.shape[: D.ndim - times])


def sphere_min(T: SymmetricTensor, restarts: int = 64, seed: int = 42, max_iter: int = 3000):
    """Smallest value of ``T x^m`` found over ``|x| = 1``.

    Multi-start Riemannian gradient descent with Barzilai-Borwein trial steps
    and Armijo backtracking, run on all starts at once.  The starts are the
    coordinate vectors plus ``restarts`` Gaussian directions drawn from
    ``seed``.  Returns ``(value, x)``.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    D = _literal_dense(T)
    n, m = T.dim, T.order
    rng = np.random.default_rng(seed)
    X = np.vstack([np.eye(n), rng.standard_normal((restarts, n))])
    X /= np.linalg.norm(X, axis=1, keepdims=True)

    def fgrad(X):
        G = m * _contract_batch(D, X, m - 1)
        return np.einsum("bi,bi->b", G, X) / m, G

    scale = float(np.max(np.abs(D)))
    f, G = fgrad(X)
    rg = G - (m * f)[:, None] * X
    step = np.full(len(X), 1.0 / (m * max(m - 1, 1) * scale * n ** (m - 2) + 1e-300))
    active = np.ones(len(X), dtype=bool)
    stall = np.zeros(len(X), dtype=int)
    for _ in range(max_iter):
        gn2 = np.einsum("bi,bi->b", rg, rg)
        active &= (gn2 > (1e-13 * scale) ** 2) & (stall < 10)
        if not active.any():
            break
        idx = np.flatnonzero(active)
        t = step[idx].copy()
        x0, f0, g0 = X[idx], f[idx], rg[idx]
        accepted = np.zeros(idx.size, dtype=bool)
        Xn, fn = x0.copy(), f0.copy()
        for _ in range(60):
            todo = ~accepted
            if not todo.any():
                break
            trial = x0[todo] - t[todo, None] * g0[todo]
            trial /= np.linalg.norm(trial, axis=1, keepdims=True)
            ft, _ = fgrad(trial)
            ok = ft <= f0[todo] - 1e-4 * t[todo] * gn2[idx][todo]
            sel = np.flatnonzero(todo)
            Xn[sel[ok]], fn[sel[ok]] = trial[ok], ft[ok]
            accepted[sel[ok]] = True
            t[sel[~ok]] *= 0.5
        # rows whose line search failed have hit the floating-point floor
        active[idx[~accepted]] = False
        good = idx[accepted]
        if good.size == 0:
            break
        s = Xn[accepted] - x0[accepted]
        X[good] = Xn[accepted]
        f_new, G_new = fgrad(X[good])
        rg_new = G_new - (m * f_new)[:, None] * X[good]
        yv = rg_new - g0[accepted]
        sy = np.einsum("bi,bi->b", s, yv)
        ss = np.einsum("bi,bi->b", s, s)
        bb = np.where(sy > 0, ss / np.where(sy > 0, sy, 1.0), 2.0 * t[accepted])
        step[good] = np.clip(bb, 1e-12, 1e12)
        progress = f[good] - f_new > 1e-15 * np.abs(f[good]) + 1e-20 * scale
        stall[good] = np.where(progress, 0, stall[good] + 1)
        f[good], rg[good] = f_new, rg_new
    best = int(np.argmin(f))
    return float(f[best]), X[best].copy()


# -- dense symmetric eigensolver ---------------------------------------------


def jacobi_eigh(A, tol: float = 1e-15, max_sweeps: int = 100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ascending eigenvalues and the matching eigenvectors as columns.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    V = np.eye(n)
    fro = np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= tol * fro or fro == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                cs = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * cs
                # A <- J^T A J with J the (p, q) rotation
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = cs * ap - sn * aq, sn * ap + cs * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = cs * ap - sn * aq, sn * ap + cs * aq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = cs * vp - sn * vq, sn * vp + cs * vq
    w = np.diag(A).copy()
    order = np.argsort(w)
    return w[order], V[:, order]


def dense_matrix_eig(T: SymmetricTensor):
    """Full spectrum of an order-2 symmetric tensor, ascending."""
    if T.order != 2:
        raise OrderNotTwo(f"dense eigensolve needs order 2, got {T.order}")
    return jacobi_eigh(_literal_dense(T))


# -- quadrature of the integral representation -------------------------------


@dataclass(frozen=True)
class IntegralCheck:
    quadrature: float
    direct: float
    discrepancy: float
    error_estimate: float
    grading: int
    panels: int

    def to_json(self) -> dict:
        return asdict(self)


def _simpson(fa, fm, fb, h):
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(func, a: float, b: float, tol: float, max_panels: int = 200_000):
    """Adaptive Simpson rule on ``[a, b]``, refining all open panels together.

    ``func`` must accept an array of abscissae.  A panel is accepted once its
    two-half estimate agrees with the whole within ``15 * tol * width / (b-a)``;
    accepted panels get the Richardson correction.  Returns
    ``(value, error_estimate, panels)``.
    """
    lo = np.array([a])
    hi = np.array([b])
    flo, fhi = func(lo), func(hi)
    fmid = func(0.5 * (lo + hi))
    total, err, done = [], 0.0, 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        q1, q3 = 0.5 * (lo + mid), 0.5 * (mid + hi)
        f1, f3 = func(q1), func(q3)
        h = hi - lo
        whole = _simpson(flo, fmid, fhi, h)
        halves = _simpson(flo, f1, fmid, 0.5 * h) + _simpson(fmid, f3, fhi, 0.5 * h)
        diff = halves - whole
        ok = (np.abs(diff) <= 15.0 * tol * h / (b - a)) | (h <= 1e-14 * (b - a))
        total.append(halves[ok] + diff[ok] / 15.0)
        err += float(np.sum(np.abs(diff[ok]))) / 15.0
        done += int(ok.sum())
        keep = ~ok
        if done + 2 * int(keep.sum()) > max_panels:
            err += float(np.sum(np.abs(diff[keep]))) / 15.0
            total.append(halves[keep] + diff[keep] / 15.0)
            done += int(keep.sum())
            break
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        new_flo = np.concatenate([flo[keep], fmid[keep]])
        new_fhi = np.concatenate([fmid[keep], fhi[keep]])
        fmid = np.concatenate([f1[keep], f3[keep]])
        flo, fhi = new_flo, new_fhi
    value = math.fsum(np.concatenate(total)) if total else 0.0
    return value, err, done


def integral_identity_check(
    c: GeneratingVector,
    x,
    quad_tol: float = 1e-11,
    improper: bool = False,
    grading: int | None = None,
) -> IntegralCheck:
    """Compare ``C x^m`` with ``int_0^1 (sum_i t^(c_i - 1/m) x_i)^m dt``.

    The substitution ``t = s^k`` clusters the quadrature near ``t = 0``.  By
    default ``k = 2`` and every ``c_i`` must exceed ``1/m``; with
    ``improper=True`` any positive ``c`` is accepted and ``k`` is raised until
    the transformed integrand is bounded.
    """
    vals = np.array(c.entries)
    m = c.order
    x = np.asarray(x, dtype=float)
    if x.shape != (c.dim,):
        raise ValueError(f"x must have length {c.dim}")
    if np.any(vals <= 0):
        raise PreconditionViolated("integral representation needs c > 0")
    if np.any(vals <= 1.0 / m) and not improper:
        raise PreconditionViolated("some c_i <= 1/m; pass improper=True to integrate anyway")
    if grading is None:
        # leading behaviour of the transformed integrand is s^(k m min(c) - 1)
        grading = max(2, math.ceil(2.0 / (m * vals.min())))
    k = grading
    expo = vals - 1.0 / m

    def integrand(s):
        t = s**k
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = (np.power.outer(t, expo) @ x) ** m * k * s ** (k - 1)
        # the transformed integrand vanishes at s = 0 for the chosen k
        return np.where(s > 0, out, 0.0)

    direct = float(build_cauchy(c).apply_xm(x))
    if not np.any(x):
        return IntegralCheck(0.0, direct, abs(direct), 0.0, k, 0)
    value, est, panels = adaptive_simpson(integrand, 0.0, 1.0, quad_tol)
    if est > quad_tol:
        raise QuadratureFailure(est, quad_tol)
    return IntegralCheck(value, direct, abs(value - direct), est, k, panels)


# -- Hankel index condition ----------------------------------------------------


def hankel_condition_holds(c, m: int, tol: float = 1e-9) -> bool:
    """Check by enumeration that equal index sums give equal multiset sums."""
    vals = np.asarray(c.entries if isinstance(c, GeneratingVector) else c, dtype=float)
    n = vals.size
    seen: dict[int, float] = {}
    for tup in product(range(n), repeat=m):
        key = sum(tup)
        s = math.fsum(vals[list(tup)])
        if key in seen:
            if abs(seen[key] - s) > tol:
                return False
        else:
            seen[key] = s
    return True
