"""Exception and warning types raised across the package."""


class CauchyTensorError(Exception):
    """Base class for every error raised by this package."""


class ZeroMultisetSum(CauchyTensorError, ValueError):
    """Some multiset sum of generating-vector entries is exactly zero."""

    def __init__(self, indices):
        self.indices = tuple(int(i) for i in indices)
        super().__init__(
            f"multiset sum over indices {list(self.indices)} is zero; "
            "the Cauchy tensor is undefined"
        )


class NearSingularSum(UserWarning):
    """A multiset sum is nonzero but tiny relative to the generating vector."""


class IndexOutOfRange(CauchyTensorError, IndexError):
    pass


class DimensionMismatch(CauchyTensorError, ValueError):
    pass


class ShapeMismatch(CauchyTensorError, ValueError):
    pass


class EmptySubset(CauchyTensorError, ValueError):
    pass


class DuplicateIndex(CauchyTensorError, ValueError):
    pass


class EmptyList(CauchyTensorError, ValueError):
    pass


class BudgetExceeded(CauchyTensorError, RuntimeError):
    def __init__(self, needed, budget):
        self.needed = int(needed)
        self.budget = int(budget)
        super().__init__(f"work estimate {self.needed} exceeds budget {self.budget}")


class PreconditionViolated(CauchyTensorError, ValueError):
    pass


class NotPositiveVector(PreconditionViolated):
    pass


class OddOrderUnsupported(PreconditionViolated):
    pass


class OrderNotTwo(PreconditionViolated):
    pass


class NoConvergence(CauchyTensorError, RuntimeError):
    """An iterative solver hit its iteration cap.

    The best iterate reached is kept on ``best`` (a ``SpectralPair``).
    """

    def __init__(self, max_iter, best=None):
        self.max_iter = int(max_iter)
        self.best = best
        super().__init__(f"no convergence after {self.max_iter} iterations")


class QuadratureFailure(CauchyTensorError, RuntimeError):
    def __init__(self, estimate, tol):
        self.estimate = float(estimate)
        self.tol = float(tol)
        super().__init__(
            f"quadrature error estimate {self.estimate:.3e} exceeds tolerance {self.tol:.3e}"
        )
