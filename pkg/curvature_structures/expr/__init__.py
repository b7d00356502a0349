from .expression import Expr, ONE, ZERO, render
from .parser import ExpressionParser, parse
from .zero_test import SamplePoint, ZeroStatus, ZeroTester, ZeroVerdict, eval_at


def differentiate(e, index):
    """Exact partial derivative of e along the coordinate with the given 0-based index."""
    return e.derivative(index)


def is_zero(e, tester=None):
    """Graded zero verdict of e; a default seeded tester is used when none is given."""
    return (tester or ZeroTester()).check(e)
