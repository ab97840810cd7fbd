"""Definiteness of even-order Cauchy tensors from the generating vector alone.

For even ``m`` a Cauchy tensor is positive semi-definite exactly when every
entry of ``c`` is positive, and positive definite when in addition the
entries are pairwise distinct.  Negating ``c`` negates the tensor, which
gives the negative cases.  Odd-order tensors are never semi-definite unless
zero, so they get their own label.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np

from .errors import BudgetExceeded, PreconditionViolated
from .multiset import multiplicities, multiset_table
from .tensor import GeneratingVector, build_cauchy

__all__ = [
    "Definiteness",
    "DefinitenessReport",
    "RowSumProfile",
    "MonotonicityReport",
    "classify",
    "duplicate_pairs",
    "row_sum_profile",
    "pd_via_row_sums",
    "monotonicity_probe",
]

ROW_SUM_BUDGET = 10**8


class Definiteness(str, Enum):
    PD = "PD"
    PSD_NOT_PD = "PSD_NOT_PD"
    ND = "ND"
    NSD_NOT_ND = "NSD_NOT_ND"
    NOT_PSD_NOT_NSD = "NOT_PSD_NOT_NSD"
    ODD_ORDER_NA = "ODD_ORDER_NA"


@dataclass(frozen=True)
class DefinitenessReport:
    classification: Definiteness
    witness: str
    duplicate_pairs: list = field(default_factory=list)

    @property
    def is_psd(self) -> bool:
        return self.classification in (Definiteness.PD, Definiteness.PSD_NOT_PD)

    @property
    def is_pd(self) -> bool:
        return self.classification is Definiteness.PD

    def to_json(self) -> dict:
        return {
            "classification": self.classification.value,
            "witness": self.witness,
            "duplicates": [list(p) for p in self.duplicate_pairs],
        }


@dataclass(frozen=True)
class RowSumProfile:
    row_sums: np.ndarray
    R: float
    r_min: float
    a_bar: float
    a_under: float
    argmax_row: int
    argmin_row: int

    def to_json(self) -> dict:
        return {
            "row_sums": [float(v) for v in self.row_sums],
            "R": self.R,
            "r": self.r_min,
            "a_bar": self.a_bar,
            "a_under": self.a_under,
            "argmax_row": self.argmax_row,
            "argmin_row": self.argmin_row,
        }


def _same(a: float, b: float, rtol: float) -> bool:
    if rtol == 0.0:
        return a == b
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def duplicate_pairs(values, rtol: float = 0.0) -> list:
    """Index pairs ``(i, j)``, ``i < j``, whose values coincide within ``rtol``."""
    vals = [float(v) for v in values]
    return [
        (i, j)
        for i in range(len(vals))
        for j in range(i + 1, len(vals))
        if _same(vals[i], vals[j], rtol)
    ]


def classify(c: GeneratingVector, rtol: float = 0.0) -> DefinitenessReport:
    """Label the Cauchy tensor of ``c`` as PD / PSD / ND / NSD / indefinite.

    ``rtol`` is the relative tolerance under which two entries of ``c`` count
    as equal; the default compares exactly.
    """
    dups = duplicate_pairs(c.entries, rtol)
    if c.order % 2:
        return DefinitenessReport(
            Definiteness.ODD_ORDER_NA,
            f"order {c.order} is odd; no nonzero odd-order tensor is semi-definite",
            dups,
        )
    if c.all_positive:
        if dups:
            i, j = dups[0]
            return DefinitenessReport(
                Definiteness.PSD_NOT_PD,
                f"c > 0 with duplicate entries; f(e_{i} - e_{j}) = 0",
                dups,
            )
        return DefinitenessReport(Definiteness.PD, "c > 0 with mutually distinct entries", dups)
    if c.all_negative:
        if dups:
            i, j = dups[0]
            return DefinitenessReport(
                Definiteness.NSD_NOT_ND,
                f"c < 0 with duplicate entries; f(e_{i} - e_{j}) = 0",
                dups,
            )
        return DefinitenessReport(Definiteness.ND, "c < 0 with mutually distinct entries", dups)
    neg = min(i for i, v in enumerate(c.entries) if v < 0)
    pos = min(i for i, v in enumerate(c.entries) if v > 0)
    return DefinitenessReport(
        Definiteness.NOT_PSD_NOT_NSD,
        f"mixed signs: f(e_{neg}) = 1/(m c_{neg}) < 0 < f(e_{pos}) = 1/(m c_{pos})",
        dups,
    )


def row_sum_profile(c: GeneratingVector, budget: int = ROW_SUM_BUDGET) -> RowSumProfile:
    """Row sums ``r_i`` of the Cauchy tensor and their extremes.

    ``r_i`` adds the tensor entries over all ``n**(m-1)`` trailing index
    tuples with leading index ``i``.  Trailing tuples are grouped into
    multisets weighted by their multiplicity and every row is summed with
    :func:`math.fsum`.
    """
    n, m = c.dim, c.order
    if n ** (m - 1) > budget:
        raise BudgetExceeded(n ** (m - 1), budget)
    vals = np.array(c.entries)
    tail = multiset_table(n, m - 1)
    tail_sums = np.sort(vals[tail], axis=1).sum(axis=1)
    w = multiplicities(n, m - 1)
    rows = np.array([math.fsum(w / (ci + tail_sums)) for ci in vals])
    argmax_row = int(np.argmax(rows))
    argmin_row = int(np.argmin(rows))
    return RowSumProfile(
        row_sums=rows,
        R=float(rows[argmax_row]),
        r_min=float(rows[argmin_row]),
        a_bar=float(vals.max()),
        a_under=float(vals.min()),
        argmax_row=argmax_row,
        argmin_row=argmin_row,
    )


def pd_via_row_sums(c: GeneratingVector, rtol: float = 0.0, budget: int = ROW_SUM_BUDGET) -> bool:
    """Positive definiteness of a positive even-order ``c`` read off its row sums."""
    if c.order % 2:
        raise PreconditionViolated(f"order {c.order} is odd")
    if not c.all_positive:
        raise PreconditionViolated("every entry of c must be positive")
    prof = row_sum_profile(c, budget)
    return not duplicate_pairs(prof.row_sums, rtol)


@dataclass(frozen=True)
class MonotonicityReport:
    trials: int
    seed: int
    weak_violations: int
    strict_violations: int
    axis_violations: list
    max_shortfall: float

    @property
    def monotone(self) -> bool:
        return self.weak_violations == 0 and not self.axis_violations

    def to_json(self) -> dict:
        return asdict(self)


def monotonicity_probe(c: GeneratingVector, trials: int = 1000, seed: int = 42) -> MonotonicityReport:
    """Sample ``x >= y >= 0`` and check ``f(x) >= f(y)`` for ``f(x) = C x^m``.

    ``y`` is uniform on ``[0, 2]^n`` and ``x = y + d`` with ``d`` uniform on
    ``[0, 1]^n``.  A weak violation is ``f(x) < f(y) - tol``; a strict one is
    ``f(x) <= f(y)`` while ``x != y``.  Each axis pair ``x = e_i, y = 0`` is
    also checked, which fails precisely when ``c_i < 0``.
    """
    if c.order % 2:
        raise PreconditionViolated(f"order {c.order} is odd")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    T = build_cauchy(c)
    rng = np.random.default_rng(seed)
    y = rng.uniform(0.0, 2.0, size=(trials, c.dim))
    x = y + rng.uniform(0.0, 1.0, size=(trials, c.dim))
    fx, fy = T.apply_xm(x), T.apply_xm(y)
    tol = 1e-10 * (1.0 + np.abs(fx))
    moved = np.any(x != y, axis=1)
    weak = int(np.count_nonzero(fx < fy - tol))
    strict = int(np.count_nonzero(moved & (fx <= fy)))
    axis = [i for i in range(c.dim) if T.apply_xm(np.eye(c.dim)[i]) < 0.0]
    return MonotonicityReport(
        trials=trials,
        seed=seed,
        weak_violations=weak,
        strict_violations=strict,
        axis_violations=axis,
        max_shortfall=float(max(0.0, np.max(fy - fx))),
    )
