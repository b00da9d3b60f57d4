class HornError(Exception):
    """Base class for library errors."""


class DomainError(HornError, ArithmeticError):
    """Arithmetic outside the domain of an operation (e.g. inexact quotient)."""


class DimensionError(HornError, ValueError):
    pass


class PreconditionError(HornError, ValueError):
    pass


class NoSolution(HornError):
    """A linear system over the fraction field is inconsistent."""


class NotFound(HornError):
    """An exhaustive search came back empty."""


class WitnessNotFound(HornError):
    """The Schubert witness solver exhausted its strategies.

    This is a statement about the solver's budget, never a claim that the
    intersection is empty.
    """

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []


class NoComplement(HornError):
    """A submodule provably has no invariant direct complement."""


class Infeasible(HornError):
    def __init__(self, reasons):
        super().__init__("; ".join(reasons))
        self.reasons = list(reasons)
