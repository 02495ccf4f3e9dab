"""Exception hierarchy shared by all modules."""


class TwoQubitError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(TwoQubitError, ValueError):
    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(f"matrix is not Hermitian: max |M - M^H| = {deviation:.3e}")


class NotPSD(TwoQubitError, ValueError):
    def __init__(self, eigenvalue: float):
        self.eigenvalue = eigenvalue
        super().__init__(f"matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e}")


class InvariantViolation(TwoQubitError, ValueError):
    """A state failed validation.

    ``invariant`` names the violated property (``"hermitian"``, ``"trace"``,
    ``"psd"``, ``"norm"``, ``"shape"``, ``"finite"``, ``"orthogonal"``, ...).
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"invariant violated: {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotNormalized(InvariantViolation):
    def __init__(self, detail: str = ""):
        super().__init__("norm", detail)


class BadIndex(TwoQubitError, ValueError):
    pass


class BadProbability(TwoQubitError, ValueError):
    pass


class SameState(TwoQubitError, ValueError):
    pass


class RankTooHigh(TwoQubitError, ValueError):
    def __init__(self, third_eigenvalue: float, rank_tol: float):
        self.third_eigenvalue = third_eigenvalue
        self.rank_tol = rank_tol
        super().__init__(
            f"state has rank > 2: third eigenvalue {third_eigenvalue:.3e} > rank_tol {rank_tol:.1e}"
        )


class ParseError(TwoQubitError, ValueError):
    pass


class DomainError(TwoQubitError, ValueError):
    pass


class NumericalError(TwoQubitError, ArithmeticError):
    pass
