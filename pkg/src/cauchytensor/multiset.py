"""Index bookkeeping for symmetric tensors stored over sorted index multisets.

An order-``m`` dimension-``n`` symmetric tensor has one independent entry per
multiset of size ``m`` drawn from ``range(n)``.  We list those multisets as
non-decreasing tuples in lexicographic order, which is exactly the order of
:func:`itertools.combinations_with_replacement`.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial

import numpy as np
import scipy.sparse as sp

__all__ = [
    "num_multisets",
    "multiset_table",
    "multiplicities",
    "multiset_rank",
    "scatter_matrix",
    "multiset_rank_array",
]


def num_multisets(n: int, m: int) -> int:
    """Number of size-``m`` multisets over ``n`` symbols, ``C(n+m-1, m)``."""
    return comb(n + m - 1, m)


@lru_cache(maxsize=32)
def multiset_table(n: int, m: int) -> np.ndarray:
    """All sorted index tuples, shape ``(C(n+m-1, m), m)``, lexicographic order."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.intp)
    idx = np.fromiter(
        (i for tup in combinations_with_replacement(range(n), m) for i in tup),
        dtype=np.intp,
        count=num_multisets(n, m) * m,
    ).reshape(-1, m)
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=32)
def multiplicities(n: int, m: int) -> np.ndarray:
    """Number of index tuples in each multiset's permutation class.

    For a sorted row with run lengths ``k_1, k_2, ...`` this is the
    multinomial coefficient ``m! / (k_1! k_2! ...)``.
    """
    idx = multiset_table(n, m)
    run = np.ones(idx.shape[0], dtype=np.int64)
    denom = np.ones(idx.shape[0], dtype=np.int64)
    for p in range(1, m):
        same = idx[:, p] == idx[:, p - 1]
        run = np.where(same, run + 1, 1)
        denom *= run
    w = (factorial(m) // denom).astype(np.float64)
    w.setflags(write=False)
    return w


def multiset_rank(sorted_idx, n: int) -> int:
    """Position of a non-decreasing index tuple in :func:`multiset_table`.

    Shifting ``a_j -> a_j + j`` turns the multiset into a strictly increasing
    ``m``-subset of ``range(n + m - 1)``; its lexicographic rank has a closed
    form.
    """
    m = len(sorted_idx)
    big_n = n + m - 1
    total = comb(big_n, m) - 1
    for j, a in enumerate(sorted_idx):
        total -= comb(big_n - 1 - (a + j), m - j)
    return total


@lru_cache(maxsize=32)
def scatter_matrix(n: int, m: int) -> sp.csr_matrix:
    """Sparse one-hot map from flattened ``(row, position)`` slots to indices.

    ``contrib.reshape(-1) @ scatter_matrix(n, m)`` adds every per-slot
    contribution into the bucket of the index sitting in that slot.
    """
    idx = multiset_table(n, m).reshape(-1)
    data = np.ones(idx.size)
    rows = np.arange(idx.size)
    return sp.csr_matrix((data, (rows, idx)), shape=(idx.size, n))


def multiset_rank_array(sorted_rows: np.ndarray, n: int) -> np.ndarray:
    """Vectorised :func:`multiset_rank` over the rows of an integer array."""
    sorted_rows = np.asarray(sorted_rows, dtype=np.intp)
    m = sorted_rows.shape[-1]
    big_n = n + m - 1
    # binom[a, k] = C(a, k) for a < big_n, k <= m
    binom = np.array(
        [[comb(a, k) for k in range(m + 1)] for a in range(big_n)], dtype=np.int64
    )
    total = np.full(sorted_rows.shape[:-1], comb(big_n, m) - 1, dtype=np.int64)
    for j in range(m):
        total -= binom[big_n - 1 - (sorted_rows[..., j] + j), m - j]
    return total
