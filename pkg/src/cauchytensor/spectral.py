"""H- and Z-eigenpairs of Cauchy tensors, plus spectral bounds and sign checks.

An H-eigenpair satisfies ``T x^(m-1) = lam * x**(m-1)`` (componentwise
power); a Z-eigenpair satisfies ``T x^(m-1) = lam * x`` with ``|x| = 1``.
Only real pairs are computed, and only locally: the solvers here never claim
a complete spectrum.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import optimize

from .definiteness import row_sum_profile
from .errors import NoConvergence, NotPositiveVector, OddOrderUnsupported, PreconditionViolated
from .tensor import GeneratingVector, SymmetricTensor, build_cauchy

__all__ = [
    "SpectralPair",
    "BoundsReport",
    "ZSearchResult",
    "SignAudit",
    "ZeroZProbe",
    "h_eigen_max",
    "h_lambda_min_variational",
    "h_lambda_max_variational",
    "bounds",
    "default_shift",
    "z_eigen_search",
    "odd_sign_audit",
    "zero_z_exclusion_probe",
    "h_residual",
    "z_residual",
]

TOL_EIG = 1e-8
TOL_SIGN = 1e-8
TOL_ZERO = 1e-6


@dataclass(frozen=True)
class SpectralPair:
    kind: str  # "H" or "Z"
    lam: float
    x: np.ndarray
    residual: float
    iterations: int
    converged: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": float(self.lam),
            "x": [float(v) for v in self.x],
            "residual": float(self.residual),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }


def h_residual(T: SymmetricTensor, lam: float, x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.linalg.norm(T.apply_xm1(x) - lam * x ** (T.order - 1)))


def z_residual(T: SymmetricTensor, lam: float, x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.linalg.norm(T.apply_xm1(x) - lam * x))


def _tensor(c) -> tuple[GeneratingVector, SymmetricTensor]:
    if not isinstance(c, GeneratingVector):
        raise TypeError("expected a GeneratingVector")
    return c, build_cauchy(c)


def _restart_rngs(seed: int, restarts: int):
    return [np.random.default_rng([seed, k]) for k in range(restarts)]


def _map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


# -- largest H-eigenvalue of a positive tensor --------------------------------


def h_eigen_max(
    c: GeneratingVector, tol_eig: float = TOL_EIG, max_iter: int = 5000
) -> SpectralPair:
    """Perron H-eigenpair of the Cauchy tensor of a positive ``c``.

    Power iteration ``x <- (T x^(m-1))^(1/(m-1))`` scaled to ``sum x_i^m = 1``.
    The ratios ``(T x^(m-1))_i / x_i^(m-1)`` bracket the spectral radius at
    every step; the iteration stops once successive eigenvalue estimates
    agree to ``tol_eig`` relative and the residual is below ``tol_eig``.
    """
    if not c.all_positive:
        raise NotPositiveVector("h_eigen_max needs every c_i > 0")
    c, T = _tensor(c)
    m = c.order
    x = np.full(c.dim, c.dim ** (-1.0 / m))
    lam_prev = math.inf
    for it in range(1, max_iter + 1):
        y = T.apply_xm1(x)
        lam = float(x @ y)  # sum x^m == 1
        res = float(np.linalg.norm(y - lam * x ** (m - 1)))
        if abs(lam - lam_prev) <= tol_eig * (1.0 + abs(lam_prev)) and res <= tol_eig:
            return SpectralPair("H", lam, x, res, it, True)
        lam_prev = lam
        x = y ** (1.0 / (m - 1))
        x /= np.sum(x**m) ** (1.0 / m)
    best = SpectralPair("H", lam, x, res, max_iter, False)
    raise NoConvergence(max_iter, best)


# -- variational extremes on the level set sum x^m = 1 ----------------------------


def _h_variational(c: GeneratingVector, sense: int, restarts: int, seed: int, threads: int):
    if c.order % 2:
        raise OddOrderUnsupported("the level set sum x_i^m = 1 is only compact for even m")
    c, T = _tensor(c)
    m, n = c.order, c.dim

    # the ratio C y^m / sum y^m is scale-free, so minimise it over unconstrained y
    def ratio(y):
        s = float(np.sum(y**m))
        f = float(T.apply_xm(y))
        g = m * (T.apply_xm1(y) * s - f * y ** (m - 1)) / (s * s)
        return sense * f / s, sense * g

    def run(x0):
        res = optimize.minimize(
            ratio, x0 / np.linalg.norm(x0), jac=True, method="BFGS",
            options={"gtol": 1e-14, "maxiter": 2000},
        )
        return res.x, res.fun, res.nit

    starts = list(np.eye(n)) + [rng.standard_normal(n) for rng in _restart_rngs(seed, restarts)]
    x, _, iters = min(_map(run, starts, threads), key=lambda r: r[1])
    x = x / np.sum(x**m) ** (1.0 / m)
    lam = float(T.apply_xm(x))
    res = h_residual(T, lam, x)
    return SpectralPair("H", lam, x, res, iters, res <= TOL_EIG)


def h_lambda_min_variational(
    c: GeneratingVector, restarts: int = 32, seed: int = 42, threads: int = 1
) -> SpectralPair:
    """Candidate smallest H-eigenvalue: minimum of ``C x^m`` on ``sum x_i^m = 1``.

    Heuristic: the best local minimiser over the coordinate vectors and
    ``restarts`` random starts.  ``converged`` reports whether the pair
    satisfies the H-eigen equation to ``1e-8``; global optimality is not
    certified.
    """
    return _h_variational(c, 1, restarts, seed, threads)


def h_lambda_max_variational(
    c: GeneratingVector, restarts: int = 32, seed: int = 42, threads: int = 1
) -> SpectralPair:
    """Candidate largest H-eigenvalue by maximising over the same level set."""
    return _h_variational(c, -1, restarts, seed, threads)


# -- bounds -------------------------------------------------------------------


@dataclass
class BoundsReport:
    """Spectral bounds that apply to ``c``; inapplicable ones are ``None``.

    ``mixed_sign_lower_cap`` / ``mixed_sign_upper_floor``: when ``c`` has both
    signs, ``lam_min <= 1/(m max{c_i < 0}) < 0 < 1/(m min{c_i > 0}) <= lam_max``.
    ``rowsum_lower`` / ``rowsum_upper``: strict bracket on ``lam_max`` for
    positive ``c`` with at least two distinct entries, from the row sums.
    """

    mixed_sign_lower_cap: float | None = None
    mixed_sign_upper_floor: float | None = None
    rowsum_lower: float | None = None
    rowsum_upper: float | None = None
    applicable: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def bounds(c: GeneratingVector) -> BoundsReport:
    m = c.order
    vals = np.array(c.entries)
    rep = BoundsReport()
    neg, pos = vals[vals < 0], vals[vals > 0]
    if m % 2:
        rep.applicable["mixed_sign"] = (False, "odd order: extreme H-eigenvalues are not variational")
    elif neg.size and pos.size:
        rep.mixed_sign_lower_cap = float(1.0 / (m * neg.max()))
        rep.mixed_sign_upper_floor = float(1.0 / (m * pos.min()))
        rep.applicable["mixed_sign"] = (True, "c has entries of both signs")
    else:
        rep.applicable["mixed_sign"] = (False, "c does not have entries of both signs")

    if m % 2:
        rep.applicable["rowsum_bracket"] = (False, "odd order")
    elif not c.all_positive:
        rep.applicable["rowsum_bracket"] = (False, "c is not positive")
    elif np.all(vals == vals[0]):
        rep.applicable["rowsum_bracket"] = (False, "all entries of c are equal")
    else:
        prof = row_sum_profile(c)
        R, r, a_bar = prof.R, prof.r_min, prof.a_bar
        rep.rowsum_lower = r + (math.sqrt(R / r) - 1.0) / (m * a_bar)
        rep.rowsum_upper = R - (1.0 - math.sqrt(r / R)) / (m * a_bar)
        rep.applicable["rowsum_bracket"] = (True, "c > 0, even order, at least two distinct entries")
    return rep


# -- Z-eigenpairs ---------------------------------------------------------------


def default_shift(T: SymmetricTensor) -> float:
    """``1 + sum of |entries|`` over all ``n**m`` index tuples."""
    return 1.0 + float(np.sum(T.weights * np.abs(T.values)))


@dataclass
class ZSearchResult:
    pairs: list
    dropped: int
    shift: float
    restarts: int
    seed: int

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, k):
        return self.pairs[k]

    def to_json(self) -> dict:
        return {
            "pairs": [p.to_json() for p in self.pairs],
            "dropped": self.dropped,
            "shift": self.shift,
            "restarts": self.restarts,
            "seed": self.seed,
        }


def _sshopm(T: SymmetricTensor, x0, alpha: float, tol_eig: float, max_iter: int) -> SpectralPair:
    # alpha > 0 climbs to local maxima of T x^m on the sphere, alpha < 0 descends
    sign = 1.0 if alpha >= 0 else -1.0
    x = x0 / np.linalg.norm(x0)
    y = T.apply_xm1(x)
    lam = float(x @ y)
    for it in range(1, max_iter + 1):
        z = sign * (y + alpha * x)
        x = z / np.linalg.norm(z)
        y = T.apply_xm1(x)
        lam_new = float(x @ y)
        res = float(np.linalg.norm(y - lam_new * x))
        if abs(lam_new - lam) <= tol_eig * (1.0 + abs(lam)) and res <= tol_eig:
            return SpectralPair("Z", lam_new, x, res, it, True)
        lam = lam_new
    return SpectralPair("Z", lam, x, res, max_iter, False)


def _same_pair(p: SpectralPair, q: SpectralPair, even: bool) -> bool:
    if abs(p.lam - q.lam) > 1e-6:
        return False
    cos = float(p.x @ q.x)
    if even:
        cos = abs(cos)
    return math.acos(min(1.0, max(-1.0, cos))) < 1e-3


def z_eigen_search(
    c: GeneratingVector,
    shift: float | None = None,
    restarts: int = 16,
    seed: int = 42,
    tol_eig: float = TOL_EIG,
    max_iter: int = 5000,
    threads: int = 1,
) -> ZSearchResult:
    """Z-eigenpairs found by the shifted symmetric higher-order power method.

    Every random unit start is run twice, with shift ``+shift`` (towards local
    maxima of ``C x^m`` on the sphere) and ``-shift`` (towards local minima).
    Converged pairs are de-duplicated (eigenvalues within ``1e-6`` and vectors
    within ``1e-3`` rad, up to sign for even ``m``) and sorted by eigenvalue,
    then lexicographically by vector.  Unconverged runs are only counted.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    c, T = _tensor(c)
    alpha = default_shift(T) if shift is None else abs(float(shift))
    starts = [rng.standard_normal(c.dim) for rng in _restart_rngs(seed, restarts)]
    jobs = [(x0, s * alpha) for x0 in starts for s in (1.0, -1.0)]
    runs = _map(lambda job: _sshopm(T, job[0], job[1], tol_eig, max_iter), jobs, threads)
    even = c.order % 2 == 0
    kept: list[SpectralPair] = []
    dropped = 0
    for p in runs:
        if not p.converged:
            dropped += 1
            continue
        # re-check against an independent contraction evaluation
        res = z_residual(T, p.lam, p.x)
        if res > tol_eig:
            dropped += 1
            continue
        if not any(_same_pair(p, q, even) for q in kept):
            kept.append(p)
    kept.sort(key=lambda p: (p.lam, tuple(p.x)))
    return ZSearchResult(kept, dropped, alpha, restarts, seed)


@dataclass(frozen=True)
class SignAudit:
    checked: int
    indeterminate: int
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "indeterminate": self.indeterminate,
            "violations": [p.to_json() for p in self.violations],
        }


def odd_sign_audit(pairs, c: GeneratingVector, tol_sign: float = TOL_SIGN) -> SignAudit:
    """For odd ``m`` and positive ``c``: ``lam > 0`` forces ``x >= 0`` and
    ``lam < 0`` forces ``x <= 0``.  Pairs with ``|lam| <= tol_sign`` are
    skipped as indeterminate."""
    if c.order % 2 == 0:
        raise PreconditionViolated("sign audit applies to odd order only")
    if not c.all_positive:
        raise PreconditionViolated("sign audit needs every c_i > 0")
    checked = skipped = 0
    bad = []
    for p in pairs:
        if p.kind != "Z":
            raise PreconditionViolated("sign audit takes Z-eigenpairs")
        x = np.asarray(p.x)
        if p.lam > tol_sign:
            checked += 1
            if x.min() < -tol_sign:
                bad.append(p)
        elif p.lam < -tol_sign:
            checked += 1
            if x.max() > tol_sign:
                bad.append(p)
        else:
            skipped += 1
    return SignAudit(checked, skipped, bad)


@dataclass(frozen=True)
class ZeroZProbe:
    floor: float
    x: np.ndarray
    restarts: int
    seed: int
    tol_zero: float

    @property
    def passed(self) -> bool:
        return self.floor > self.tol_zero

    def to_json(self) -> dict:
        return {
            "floor": self.floor,
            "x": [float(v) for v in self.x],
            "restarts": self.restarts,
            "seed": self.seed,
            "tol_zero": self.tol_zero,
            "passed": self.passed,
        }


def zero_z_exclusion_probe(
    c: GeneratingVector,
    restarts: int = 32,
    seed: int = 42,
    tol_zero: float = TOL_ZERO,
    threads: int = 1,
) -> ZeroZProbe:
    """Smallest ``|C x^(m-1)|`` found over unit ``x``, for odd ``m`` and
    positive distinct ``c``.  A zero Z-eigenvalue would need this to vanish,
    so a floor above ``tol_zero`` is evidence that none exists."""
    if c.order % 2 == 0:
        raise PreconditionViolated("zero Z-eigenvalue probe applies to odd order only")
    if not c.all_positive:
        raise PreconditionViolated("zero Z-eigenvalue probe needs every c_i > 0")
    vals = list(c.entries)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] == vals[j]:
                raise PreconditionViolated(
                    f"c_{i} == c_{j}: x = (e_{i} - e_{j})/sqrt(2) annihilates C x^(m-1), "
                    "so 0 is a Z-eigenvalue"
                )
    c, T = _tensor(c)
    m, n = c.order, c.dim

    starts = list(np.eye(n)) + [rng.standard_normal(n) for rng in _restart_rngs(seed, restarts)]
    runs = _map(lambda x0: _min_contraction_norm(T, x0), starts, threads)
    x, val = min(runs, key=lambda r: r[1])
    return ZeroZProbe(val, x, restarts, seed, tol_zero)


def _min_contraction_norm(T: SymmetricTensor, x0):
    """Locally minimise ``|T x^(m-1)|`` over unit ``x``.

    BFGS on ``log |T (y/|y|)^(m-1)|^2`` over unconstrained ``y``; the log
    makes the objective scale-free, so tiny floors are resolved as well as
    large ones.
    """
    m = T.order

    def fun(y):
        ny = np.linalg.norm(y)
        x = y / ny
        g = T.apply_xm1(x)
        val = float(g @ g)
        if val == 0.0:
            return -np.inf, np.zeros_like(y)
        grad_x = 2.0 * (m - 1) * (T.apply_xm2(x) @ g)
        grad_x -= (grad_x @ x) * x
        return math.log(val), grad_x / (val * ny)

    res = optimize.minimize(fun, x0 / np.linalg.norm(x0), jac=True, method="BFGS",
                            options={"gtol": 1e-10, "maxiter": 2000})
    x = res.x / np.linalg.norm(res.x)
    return x, float(np.linalg.norm(T.apply_xm1(x)))
