"""Entrywise (Hadamard) products of symmetric tensors.

The product of two Cauchy tensors is in general not a Cauchy tensor, so the
result is a plain :class:`SymmetricTensor` with no generating vector.
"""
from __future__ import annotations

import numpy as np

from .errors import EmptyList, ShapeMismatch
from .tensor import SymmetricTensor

__all__ = ["hadamard", "hadamard_chain"]


def hadamard(A: SymmetricTensor, B: SymmetricTensor) -> SymmetricTensor:
    if (A.order, A.dim) != (B.order, B.dim):
        raise ShapeMismatch(
            f"order/dim mismatch: ({A.order}, {A.dim}) vs ({B.order}, {B.dim})"
        )
    return SymmetricTensor(A.order, A.dim, A.values * B.values)


def hadamard_chain(factors) -> SymmetricTensor:
    """Entrywise product of a nonempty sequence of same-shape tensors.

    Each entry multiplies its factor values in sorted order, so the result is
    bit-for-bit independent of the order of ``factors`` (floating-point
    multiplication commutes exactly but does not associate).
    """
    factors = list(factors)
    if not factors:
        raise EmptyList("need at least one factor")
    first = factors[0]
    for F in factors[1:]:
        if (F.order, F.dim) != (first.order, first.dim):
            raise ShapeMismatch(
                f"order/dim mismatch: ({first.order}, {first.dim}) vs ({F.order}, {F.dim})"
            )
    stack = np.sort(np.stack([F.values for F in factors]), axis=0)
    out = stack[0].copy()
    for row in stack[1:]:
        out *= row
    return SymmetricTensor(first.order, first.dim, out)
