class CurvatureError(Exception):
    """Base class for every error raised by curvature_structures."""

    exit_code = 1


class ExpressionSyntaxError(CurvatureError):
    """The expression text does not follow the grammar."""

    def __init__(self, text, position, expected):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"syntax error at position {position} in {text!r}: {expected}")


class UnsupportedExpressionError(CurvatureError):
    """The expression leaves the rational-exponential class (e.g. exp of a non linear form)."""


class UnknownIdentifierError(CurvatureError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown identifier {name!r}")


class DerivativeOrderError(CurvatureError):
    def __init__(self, name, order):
        self.name = name
        self.order = order
        super().__init__(f"derivative of order {order} requested for {name!r}, at most 2 is supported")


class EvaluationError(CurvatureError):
    """Division by zero or a missing symbol during numeric evaluation."""


class IndeterminateError(CurvatureError):
    """Every sampled point hit a pole of the expression."""


class ChartError(CurvatureError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TensorShapeError(CurvatureError):
    """Slot out of range, valence mismatch or asymmetric input."""


class UnknownNameError(CurvatureError):
    exit_code = 66


class ConditionSyntaxError(CurvatureError):
    exit_code = 64


class ConditionValenceError(CurvatureError):
    exit_code = 65
