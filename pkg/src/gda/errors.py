"""Exception hierarchy.

Domain errors exit the CLI with status 1, validation/parse errors with
status 2.  Every exception carries a stable machine-readable ``code``.
"""


class GdaError(Exception):
    code = "error"
    exit_code = 1

    def __init__(self, message=""):
        super().__init__(message or self.__doc__ or self.code)


class ValidationError(GdaError):
    """Malformed input file or inconsistent configuration."""

    code = "validation"
    exit_code = 2


class ParseError(ValidationError):
    """Syntax error in a field-element literal or input file."""

    code = "parse"

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotASubgroup(GdaError):
    code = "not_a_subgroup"


class ZeroElement(GdaError):
    code = "zero_element"


class NotRootOfUnity(GdaError):
    code = "not_root_of_unity"


class InfiniteIndexRadical(GdaError):
    code = "infinite_index_radical"


class NonSquareIndex(GdaError):
    code = "non_square_index"


class DegreeOutsideGammaE(GdaError):
    code = "degree_outside_gamma_e"


class ZeroCoefficient(GdaError):
    code = "zero_coefficient"


class WrongDegree(GdaError):
    code = "wrong_degree"


class SamePosition(GdaError):
    code = "same_position"


class Singular(GdaError):
    """Matrix is not invertible."""

    code = "singular"

    def __init__(self, message="matrix is singular", row=None):
        self.row = row
        if row is not None:
            message = f"{message} (row {row})"
        super().__init__(message)


class NotDegreeZero(GdaError):
    code = "not_degree_zero"


class NotHomogeneousMatrix(GdaError):
    code = "not_homogeneous"


class SizeBudgetExceeded(GdaError):
    code = "size_budget_exceeded"


class InfiniteCoefficientField(GdaError):
    code = "infinite_coefficient_field"


class ExceptionalF2Config(GdaError):
    """The degree-0 part is the 2x2 matrix ring over GF(2)."""

    code = "exceptional_f2_config"


class OrderTooSmall(GdaError):
    code = "order_too_small"


class InfiniteT0Star(GdaError):
    code = "infinite_t0_star"
