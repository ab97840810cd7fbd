import math

import numpy as np
import pytest

from cauchytensor import (
    BudgetExceeded,
    GeneratingVector,
    OrderNotTwo,
    PreconditionViolated,
    QuadratureFailure,
    build_cauchy,
    build_hilbert,
)
from cauchytensor.oracle import (
    adaptive_simpson,
    dense_matrix_eig,
    hankel_condition_holds,
    integral_identity_check,
    jacobi_eigh,
    naive_contract,
    sphere_min,
)

from frozen import EIG_12, F_12_ONES


def gv(*c, m):
    return GeneratingVector(tuple(c), m)


# -- naive contraction ----------------------------------------------------------------


def test_naive_basis_vector():
    c = gv(0.5, 1.5, 4.0, m=3)
    T = build_cauchy(c)
    for i, ci in enumerate(c.entries):
        assert naive_contract(T, np.eye(3)[i]) == pytest.approx(1 / (3 * ci), rel=1e-15)


def test_naive_first_slot_basis_vector():
    T = build_cauchy(gv(0.5, 1.5, 4.0, m=4))
    col = naive_contract(T, np.eye(3)[1], mode="first-slot")
    assert np.allclose(col, [T.entry((i, 1, 1, 1)) for i in range(3)], rtol=1e-15)


def test_naive_budget_and_mode():
    T = build_hilbert(5, 4)
    with pytest.raises(BudgetExceeded):
        naive_contract(T, np.ones(5), budget=100)
    with pytest.raises(ValueError):
        naive_contract(T, np.ones(5), mode="diagonal")


# -- sphere minimum -------------------------------------------------------------------------


def test_sphere_min_uniform_vector():
    v, x = sphere_min(build_cauchy(gv(1, 1, 1, m=4)))
    assert abs(v) <= 1e-12
    assert abs(np.linalg.norm(x) - 1) <= 1e-12
    assert abs(x.sum()) <= 1e-3


def test_sphere_min_mixed_signs():
    v, x = sphere_min(build_cauchy(gv(1, -2, m=4)))
    assert v <= -1 / 8


def test_sphere_min_hilbert_positive():
    v, _ = sphere_min(build_hilbert(3, 4))
    assert v > 0


def test_sphere_min_matrix_case():
    v, _ = sphere_min(build_cauchy(gv(1, 2, m=2)))
    assert v == pytest.approx(EIG_12[0], abs=1e-12)


def test_sphere_min_reproducible():
    T = build_cauchy(gv(0.3, 0.9, 2.2, m=4))
    a = sphere_min(T, restarts=16, seed=9)
    b = sphere_min(T, restarts=16, seed=9)
    assert a[0] == b[0] and np.array_equal(a[1], b[1])


@pytest.mark.parametrize("seed", range(10))
def test_sphere_min_never_below_psd_floor(seed):
    rng = np.random.default_rng(seed)
    c = gv(*rng.uniform(0.1, 3.0, int(rng.integers(1, 5))), m=4)
    v, _ = sphere_min(build_cauchy(c), restarts=16)
    assert v >= -1e-8


# -- dense eigensolver --------------------------------------------------------------------


def test_jacobi_two_by_two():
    ev, _ = dense_matrix_eig(build_cauchy(gv(1, 2, m=2)))
    assert ev == pytest.approx(list(EIG_12), abs=1e-15)


def test_jacobi_rank_one():
    ev, _ = dense_matrix_eig(build_cauchy(gv(1, 1, m=2)))
    assert ev == pytest.approx([0.0, 1.0], abs=1e-15)


def test_jacobi_hilbert_positive():
    ev, _ = dense_matrix_eig(build_hilbert(3, 2))
    assert np.all(ev > 0)


@pytest.mark.parametrize("seed", range(10))
def test_jacobi_residuals(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    A = rng.standard_normal((n, n))
    A = A + A.T
    ev, V = jacobi_eigh(A)
    assert list(ev) == sorted(ev)
    for k in range(n):
        assert np.linalg.norm(A @ V[:, k] - ev[k] * V[:, k]) <= 1e-10
    assert np.allclose(V.T @ V, np.eye(n), atol=1e-12)


def test_jacobi_needs_order_two():
    with pytest.raises(OrderNotTwo):
        dense_matrix_eig(build_hilbert(2, 4))


# -- quadrature ---------------------------------------------------------------------------


def test_adaptive_simpson_smooth():
    val, err, _ = adaptive_simpson(np.sin, 0.0, math.pi, 1e-12)
    assert val == pytest.approx(2.0, abs=1e-11)
    assert err <= 1e-12


def test_integral_identity_duplicate_entries():
    r = integral_identity_check(gv(1, 1, 1, m=4), np.array([1.0, -1.0, 0.0]))
    assert abs(r.quadrature) <= 1e-10 and abs(r.direct) <= 1e-10


def test_integral_identity_matrix_case():
    r = integral_identity_check(gv(1, 2, m=2), np.array([1.0, 1.0]))
    assert r.quadrature == pytest.approx(F_12_ONES, abs=1e-9)
    assert r.direct == pytest.approx(F_12_ONES, abs=1e-14)


def test_integral_identity_zero_vector():
    r = integral_identity_check(gv(1, 2, m=4), np.zeros(2))
    assert r.quadrature == 0.0 and r.direct == 0.0


def test_integral_identity_improper_mode():
    c = gv(0.1, 0.2, 1.0, m=4)  # c_i below 1/m: integrand singular at 0
    with pytest.raises(PreconditionViolated):
        integral_identity_check(c, np.ones(3))
    r = integral_identity_check(c, np.array([0.3, -0.5, 1.0]), improper=True)
    assert r.discrepancy <= 1e-8 * (1 + abs(r.direct))
    assert r.grading >= 2


def test_integral_identity_rejects_nonpositive():
    with pytest.raises(PreconditionViolated):
        integral_identity_check(gv(1, -2, m=2), np.ones(2), improper=True)


def test_integral_identity_failure_is_reported():
    with pytest.raises(QuadratureFailure):
        integral_identity_check(gv(0.3, 4.0, m=4), np.array([1.0, -1.0]), quad_tol=1e-30)


@pytest.mark.parametrize("seed", range(10))
def test_integral_identity_random(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.choice([2, 4]))
    n = int(rng.integers(1, 5))
    c = gv(*rng.uniform(1 / m + 0.1, 5, n), m=m)
    r = integral_identity_check(c, rng.uniform(-1, 1, n))
    assert r.discrepancy <= max(1e-9, 1e-11) * (1 + abs(r.direct))


def test_hankel_brute_force():
    assert hankel_condition_holds([1.0, 2.0, 3.0], 3)
    assert not hankel_condition_holds([1.0, 2.0, 4.0], 2)
