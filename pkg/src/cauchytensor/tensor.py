"""Symmetric Cauchy tensors: construction, canonical storage and contractions.

A Cauchy tensor of order ``m`` is generated by a vector ``c`` of length ``n``;
its entry at ``(i_1, ..., i_m)`` is ``1 / (c[i_1] + ... + c[i_m])``.  Every
symmetric tensor here is stored once per sorted index multiset, never as a
dense ``n**m`` array.

Indices are 0-based throughout.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateIndex,
    EmptySubset,
    IndexOutOfRange,
    NearSingularSum,
    ZeroMultisetSum,
)
from .multiset import (
    multiplicities,
    multiset_rank,
    multiset_rank_array,
    multiset_table,
    num_multisets,
    scatter_matrix,
)

__all__ = [
    "GeneratingVector",
    "SymmetricTensor",
    "build_cauchy",
    "build_hilbert",
    "hilbert_vector",
    "entry",
    "apply_xm",
    "apply_xm1",
    "apply_xm2",
    "principal_subtensor",
    "is_hankel_compatible",
]

SING_RTOL = 1e-12


@dataclass(frozen=True)
class GeneratingVector:
    """The vector ``c`` together with the tensor order ``m``.

    Construction rejects any ``c`` for which some multiset sum
    ``c[i_1] + ... + c[i_m]`` is exactly zero.
    """

    entries: tuple
    order: int

    def __post_init__(self):
        vals = tuple(float(v) for v in np.ravel(np.asarray(self.entries, dtype=float)))
        object.__setattr__(self, "entries", vals)
        if len(vals) < 1:
            raise ValueError("generating vector must have at least one entry")
        if int(self.order) != self.order or self.order < 2:
            raise ValueError(f"order must be an integer >= 2, got {self.order!r}")
        object.__setattr__(self, "order", int(self.order))
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("generating vector entries must be finite")
        for i, v in enumerate(vals):
            if v == 0.0:
                raise ZeroMultisetSum((i,) * self.order)
        if not (self.all_positive or self.all_negative):
            zero = np.flatnonzero(self._sums == 0.0)
            if zero.size:
                raise ZeroMultisetSum(multiset_table(self.dim, self.order)[zero[0]])

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def c(self) -> np.ndarray:
        out = np.array(self.entries)
        out.setflags(write=False)
        return out

    @property
    def all_positive(self) -> bool:
        return all(v > 0 for v in self.entries)

    @property
    def all_negative(self) -> bool:
        return all(v < 0 for v in self.entries)

    @cached_property
    def _sums(self) -> np.ndarray:
        # Summing sorted values makes each sum depend only on the multiset of
        # values, so equal multisets give bit-identical sums.
        c = np.array(self.entries)
        idx = multiset_table(self.dim, self.order)
        sums = np.sort(c[idx], axis=1).sum(axis=1)
        # exact re-summation where cancellation may have produced the result
        scale = max(abs(v) for v in self.entries)
        risky = np.flatnonzero(np.abs(sums) <= 1e-8 * scale)
        for k in risky:
            sums[k] = math.fsum(c[idx[k]])
        sums.setflags(write=False)
        return sums

    def subvector(self, subset: Sequence[int]) -> "GeneratingVector":
        return GeneratingVector(tuple(self.entries[i] for i in subset), self.order)

    def to_json(self) -> dict:
        return {"c": list(self.entries), "m": self.order}


@dataclass(frozen=True, eq=False)
class SymmetricTensor:
    """Order-``m`` dimension-``n`` symmetric tensor over canonical multisets.

    ``values[k]`` is the entry at ``multiset_table(n, m)[k]``.
    """

    order: int
    dim: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float).reshape(-1)
        if vals.size != num_multisets(self.dim, self.order):
            raise DimensionMismatch(
                f"expected {num_multisets(self.dim, self.order)} canonical values, "
                f"got {vals.size}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def indices(self) -> np.ndarray:
        return multiset_table(self.dim, self.order)

    @property
    def weights(self) -> np.ndarray:
        return multiplicities(self.dim, self.order)

    @property
    def shape(self) -> tuple:
        return (self.dim,) * self.order

    def __len__(self):
        return self.values.size

    def _position(self, idx) -> int:
        idx = tuple(int(i) for i in idx)
        if len(idx) != self.order:
            raise IndexOutOfRange(f"expected {self.order} indices, got {len(idx)}")
        for i in idx:
            if not 0 <= i < self.dim:
                raise IndexOutOfRange(f"index {i} outside [0, {self.dim})")
        return multiset_rank(sorted(idx), self.dim)

    def entry(self, idx) -> float:
        return float(self.values[self._position(idx)])

    __getitem__ = entry

    def _check_x(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1:] != (self.dim,) or x.ndim > 2:
            raise DimensionMismatch(f"expected vector(s) of length {self.dim}, got shape {x.shape}")
        return x

    def apply_xm(self, x):
        """``T x^m``; accepts one vector or a batch of row vectors."""
        x = self._check_x(x)
        terms = x[..., self.indices].prod(axis=-1)
        return terms @ (self.weights * self.values)

    def apply_xm1(self, x) -> np.ndarray:
        """``T x^(m-1)``: component ``i`` contracts every slot but the first, fixed to ``i``."""
        x = self._check_x(x)
        m = self.order
        xs = x[..., self.indices]
        # product over all slots except slot p, without dividing by x
        excl = np.ones_like(xs)
        for p in range(m):
            for q in range(m):
                if q != p:
                    excl[..., p] *= xs[..., q]
        coef = (self.weights * self.values / m)[:, None]
        contrib = excl * coef
        flat = contrib.reshape(*contrib.shape[:-2], -1)
        return np.asarray(scatter_matrix(self.dim, m).T @ flat.T).T

    def apply_xm2(self, x) -> np.ndarray:
        """The symmetric matrix ``T x^(m-2)`` (the tensor itself when ``m == 2``)."""
        x = self._check_x(x)
        if x.ndim != 1:
            raise DimensionMismatch("apply_xm2 takes a single vector")
        n, m = self.dim, self.order
        idx = self.indices
        xs = x[idx]
        coef = self.weights * self.values / (m * (m - 1))
        out = np.zeros(n * n)
        for p in range(m):
            for q in range(m):
                if p == q:
                    continue
                rest = np.ones(idx.shape[0])
                for r in range(m):
                    if r != p and r != q:
                        rest *= xs[:, r]
                out += np.bincount(idx[:, p] * n + idx[:, q], weights=coef * rest, minlength=n * n)
        return out.reshape(n, n)

    def to_dense(self) -> np.ndarray:
        """Full ``n**m`` array; only sensible for small tensors."""
        full = np.indices(self.shape).reshape(self.order, -1).T
        ranks = multiset_rank_array(np.sort(full, axis=1), self.dim)
        return self.values[ranks].reshape(self.shape)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "dim": self.dim,
            "entries": [
                {"idx": [int(i) for i in row], "value": float(v)}
                for row, v in zip(self.indices, self.values)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SymmetricTensor":
        m, n = int(obj["order"]), int(obj["dim"])
        vals = np.full(num_multisets(n, m), np.nan)
        for item in obj["entries"]:
            vals[multiset_rank(sorted(item["idx"]), n)] = float(item["value"])
        if np.isnan(vals).any():
            raise DimensionMismatch("tensor dump is missing canonical entries")
        return cls(m, n, vals)

    def allclose(self, other: "SymmetricTensor", **kw) -> bool:
        return (
            self.order == other.order
            and self.dim == other.dim
            and np.allclose(self.values, other.values, **kw)
        )


def _as_gv(c, m=None) -> GeneratingVector:
    if isinstance(c, GeneratingVector):
        return c
    if m is None:
        raise TypeError("order m is required when c is not a GeneratingVector")
    return GeneratingVector(tuple(np.ravel(c)), m)


def build_cauchy(c, m: int | None = None, eps_sing: float | None = None) -> SymmetricTensor:
    """Cauchy tensor with entries ``1 / (c[i_1] + ... + c[i_m])``.

    ``c`` is a :class:`GeneratingVector`, or any sequence together with ``m``.
    Sums smaller in magnitude than ``eps_sing`` (default ``1e-12 * max|c|``)
    trigger a :class:`NearSingularSum` warning.
    """
    gv = _as_gv(c, m)
    sums = gv._sums
    if eps_sing is None:
        eps_sing = SING_RTOL * max(abs(v) for v in gv.entries)
    tiny = np.flatnonzero(np.abs(sums) < eps_sing)
    if tiny.size:
        rows = multiset_table(gv.dim, gv.order)[tiny]
        warnings.warn(
            f"{tiny.size} multiset sum(s) below {eps_sing:.3e}, e.g. indices "
            f"{rows[0].tolist()} (sum {sums[tiny[0]]:.3e})",
            NearSingularSum,
            stacklevel=2,
        )
    return SymmetricTensor(gv.order, gv.dim, 1.0 / sums)


def hilbert_vector(n: int, m: int) -> GeneratingVector:
    """``c_i = i + 1/m`` for 0-based ``i``; generates the Hilbert tensor."""
    if n < 1 or m < 2:
        raise ValueError(f"need n >= 1 and m >= 2, got n={n}, m={m}")
    return GeneratingVector(tuple(i + 1.0 / m for i in range(n)), m)


def build_hilbert(n: int, m: int) -> SymmetricTensor:
    """Hilbert tensor: entry ``1 / (i_1 + ... + i_m + 1)`` with 0-based indices.

    Entries come from the integer index sums, so they are exact reciprocals
    even when ``1/m`` is not a binary fraction.
    """
    if n < 1 or m < 2:
        raise ValueError(f"need n >= 1 and m >= 2, got n={n}, m={m}")
    idx = multiset_table(n, m)
    return SymmetricTensor(m, n, 1.0 / (idx.sum(axis=1) + 1.0))


def entry(T: SymmetricTensor, idx) -> float:
    return T.entry(idx)


def apply_xm(T: SymmetricTensor, x):
    return T.apply_xm(x)


def apply_xm1(T: SymmetricTensor, x):
    return T.apply_xm1(x)


def apply_xm2(T: SymmetricTensor, x):
    return T.apply_xm2(x)


def principal_subtensor(c: GeneratingVector, subset: Sequence[int]) -> SymmetricTensor:
    """Cauchy tensor of ``c`` restricted to ``subset`` (kept in the given order)."""
    subset = [int(i) for i in subset]
    if not subset:
        raise EmptySubset("subset must be nonempty")
    if len(set(subset)) != len(subset):
        raise DuplicateIndex(f"repeated index in {subset}")
    for i in subset:
        if not 0 <= i < c.dim:
            raise IndexOutOfRange(f"index {i} outside [0, {c.dim})")
    return build_cauchy(c.subvector(subset))


def is_hankel_compatible(c, tol: float = 1e-10) -> bool:
    """True when multiset sums of ``c`` depend only on the index sum.

    That holds exactly when ``c`` is an arithmetic progression, which we test
    through its second differences.
    """
    vals = np.asarray(c.entries if isinstance(c, GeneratingVector) else c, dtype=float)
    if vals.size <= 2:
        return True
    return bool(np.max(np.abs(np.diff(vals, 2))) <= tol)
