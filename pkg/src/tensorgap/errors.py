"""Exception hierarchy.

Two families matter to callers: ``ValidationError`` (bad input, violated
invariant) and ``BudgetError`` (a dimension or enumeration cap was hit).
The CLI maps them to exit codes 2 and 3.
"""


class TensorGapError(Exception):
    pass


class ValidationError(TensorGapError, ValueError):
    pass


class BudgetError(TensorGapError):
    pass


class Infeasible(TensorGapError):
    pass


class LpStalled(TensorGapError):
    """Simplex exceeded its pivot cap (numerical cycling)."""


class Unbounded(TensorGapError):
    pass


class NotSymmetric(ValidationError):
    pass


class NotFullDimensional(ValidationError):
    pass


class DegenerateCone(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class UnsupportedKind(ValidationError):
    pass


class UnsupportedPair(ValidationError):
    pass


class ZeroTensor(ValidationError):
    pass


class NotTwoDimensional(ValidationError):
    pass


class BadProbabilityVector(ValidationError):
    pass


class InvalidGame(ValidationError):
    pass


class NotContraction(ValidationError):
    def __init__(self, which, norm):
        super().__init__(f"operator {which} is not a contraction: norm {norm:.12g} > 1")
        self.which = which
        self.norm = norm


class DimensionTooLarge(BudgetError):
    pass


class VertexBudgetExceeded(BudgetError):
    pass


class BudgetExceeded(BudgetError):
    pass
