"""
Numeric cross-validation of graded verdicts.

A symbolic zero is re-checked by evaluating both sides of the identity separately at
seeded points the grading never draws. A Fails witness has to stand clear of the
rounding floor relative to the terms it was computed from.
"""

import logging

import numpy as np

from ..errors import EvaluationError, IndeterminateError
from ..expr.zero_test import MAX_BATCHES

logger = logging.getLogger(__name__)

CROSS_POINTS = 4
CROSS_TOLERANCE = 1e-9
WITNESS_FLOOR = 1e-6


def agreement(lhs, rhs, tester, count=CROSS_POINTS):
    """
    Largest relative gap between two tensors of the same shape.

    Both sides are evaluated component by component at ``count`` seeded points from
    the batch after the grading batches; points where a side has a pole are skipped.

    Returns:
    float: max over points and components of |l - r| / (1 + |l| + |r|).
    """
    if not lhs.entries() and not rhs.entries():
        return 0.0
    gaps = []
    for point in tester.points(count, batch=MAX_BATCHES):
        try:
            left = lhs.evaluate(point)
            right = rhs.evaluate(point)
        except (EvaluationError, ZeroDivisionError, OverflowError):
            continue
        gaps.append(np.max(np.abs(left - right) / (1 + np.abs(left) + np.abs(right))))
    if not gaps:
        raise IndeterminateError(f"{lhs.name} or {rhs.name} has a pole at every cross-check point")
    worst = float(max(gaps))
    logger.debug("%s vs %s: relative gap %.3g over %d points", lhs.name, rhs.name, worst, len(gaps))
    return worst


def agrees(lhs, rhs, tester, count=CROSS_POINTS):
    return agreement(lhs, rhs, tester, count) < CROSS_TOLERANCE


def witness_is_clear(grade):
    """A NonZero grade whose witness value exceeds the floor relative to its terms."""
    return not grade.is_zero and grade.relative > WITNESS_FLOOR
