"""Exception types shared across the package."""


class ParityError(ValueError):
    """Invalid or mismatched quantum numbers (e.g. integer j with half-integer m)."""


class NumericalFailure(ArithmeticError):
    """Base class for failures of the numerical machinery itself."""


class ConvergenceError(NumericalFailure):
    def __init__(self, index, iterations):
        self.index = index
        self.iterations = iterations
        super().__init__(
            f"eigenvalue {index} not converged after {iterations} QL iterations"
        )


class SnapFailure(NumericalFailure):
    """A computed eigenvalue is too far from the expected half-integer grid."""

    def __init__(self, k, value, deviation):
        self.k = k
        self.value = value
        self.deviation = deviation
        super().__init__(
            f"eigenvalue {k} = {value!r} deviates from the spin grid by {deviation:.3e}"
        )


class PrecisionError(NumericalFailure):
    """Requested oracle precision is below the floor needed for this spin."""
