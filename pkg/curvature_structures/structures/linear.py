"""
Scalar-field linear decompositions T = sum c_k B_k of tensors.

The independent basis members and a nonsingular set of equations are chosen
numerically at sample points (pivoted QR); the square system is then solved exactly
over Exprs and the residual is graded with the zero oracle.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ..errors import EvaluationError
from ..expr.expression import ZERO
from ..expr.zero_test import ZeroStatus
from ..tensor.tensor import TensorGrade

logger = logging.getLogger(__name__)

SAMPLE_POINTS = 4
RANK_THRESHOLD = 1e-8


@dataclass
class Decomposition:
    names: list
    coefficients: dict = None
    rank: int = 0
    dependent: list = field(default_factory=list)
    grade: TensorGrade = None
    numeric_coefficients: dict = None
    sample_points: int = 0

    @property
    def holds(self):
        return self.grade is not None and self.grade.is_zero


def support(tensors):
    """Sorted union of the nonzero indices of the tensors."""
    indices = set()
    for T in tensors:
        indices.update(index for index, _ in T.entries())
    return sorted(indices)


def _value(component, point):
    return float(component.evaluate(point)) if component else 0.0


def sample_systems(target, basis, points):
    """
    Evaluate target and basis on their joint support at each point.

    Returns:
    (rows, systems): the index list and (point, M, b) triples; points that hit a pole are skipped.
    """
    rows = support([target] + list(basis))
    systems = []
    for point in points:
        try:
            M = np.array([[_value(B[index], point) for B in basis] for index in rows], dtype=float)
            b = np.array([_value(target[index], point) for index in rows], dtype=float)
        except (EvaluationError, ZeroDivisionError, OverflowError):
            logger.debug("skipping a sample point at a pole")
            continue
        systems.append((point, M.reshape(len(rows), len(basis)), b))
    return rows, systems


def numeric_rank(M, threshold=RANK_THRESHOLD):
    """Rank and column pivots of M from a pivoted QR, relative threshold on the R diagonal."""
    if M.size == 0 or not np.any(M):
        return 0, []
    R, pivots = scipy.linalg.qr(M, mode="r", pivoting=True)
    diagonal = np.abs(np.diag(R))
    rank = int(np.sum(diagonal > threshold * diagonal[0]))
    return rank, list(pivots[:rank])


def independent_columns(M, threshold=RANK_THRESHOLD):
    """Columns of M kept greedily in their given order while they raise the numeric rank."""
    chosen = []
    for k in range(M.shape[1]):
        if numeric_rank(M[:, chosen + [k]], threshold)[0] > len(chosen):
            chosen.append(k)
    return chosen


def solve_exact(matrix, rhs, point=None):
    """
    Solve a square nonsingular system of Exprs by Gaussian elimination.

    Pivots are chosen by magnitude at ``point`` when given, so that canonical forms
    that vanish numerically are never used as pivots.
    """
    size = len(matrix)
    A = [list(row) + [rhs[r]] for r, row in enumerate(matrix)]

    def weight(e):
        if e.is_zero():
            return 0.0
        if point is None:
            return 1.0
        try:
            return abs(float(e.evaluate(point)))
        except (EvaluationError, ZeroDivisionError, OverflowError):
            return 0.0

    for column in range(size):
        best = max(range(column, size), key=lambda r: weight(A[r][column]))
        if weight(A[best][column]) == 0.0:
            raise EvaluationError("singular system in exact solve")
        A[column], A[best] = A[best], A[column]
        pivot_inverse = A[column][column].inverse()
        A[column] = [e * pivot_inverse if e else e for e in A[column]]
        for r in range(size):
            if r == column or not A[r][column]:
                continue
            factor = A[r][column]
            A[r] = [e - factor * p if p else e for e, p in zip(A[r], A[column])]
    return [A[r][size] for r in range(size)]


def decompose(target, basis, tester, names=None):
    """
    Write target as a scalar-field combination of basis tensors.

    Parameters:
    target (Tensor): the tensor to decompose.
    basis (list): tensors with the valence of target.
    tester (ZeroTester): zero oracle, also the source of sample points.
    names (list): coefficient names, c1, c2, ... by default.

    Returns:
    Decomposition: coefficients (dependent members get 0) and the residual grade.
    """
    names = list(names or [f"c{k + 1}" for k in range(len(basis))])
    rows, systems = sample_systems(target, basis, tester.points(SAMPLE_POINTS))
    result = Decomposition(names, sample_points=len(systems))
    if not systems:
        result.grade = TensorGrade(ZeroStatus.NONZERO)
        return result
    ranked = [(independent_columns(M), point, M, b) for point, M, b in systems]
    columns, point, M, b = max(ranked, key=lambda item: len(item[0]))
    rank = len(columns)
    result.rank = rank
    result.dependent = [names[k] for k in range(len(basis)) if k not in columns]
    coefficients = {name: ZERO for name in names}
    if rank:
        _, row_pivots = numeric_rank(M[:, columns].T)
        chosen = sorted(row_pivots)
        if len(chosen) != rank:
            return _numeric_decomposition(result, systems, columns)
        matrix = [[basis[k][rows[r]] for k in columns] for r in chosen]
        rhs = [target[rows[r]] for r in chosen]
        try:
            solution = solve_exact(matrix, rhs, point)
        except EvaluationError:
            return _numeric_decomposition(result, systems, columns)
        for k, value in zip(columns, solution):
            coefficients[names[k]] = value
    residual = target
    for name, B in zip(names, basis):
        if coefficients[name]:
            residual = residual - B.scaled(coefficients[name])
    result.coefficients = coefficients
    result.grade = residual.grade(tester)
    logger.debug("decomposition of %s: rank %d, residual %s", target.name, rank, result.grade.status.value)
    return result


def _numeric_decomposition(result, systems, columns):
    """Least squares at every sample point; used when the exact solve meets a singular pivot."""
    zero = True
    numeric = {}
    for index, (point, M, b) in enumerate(systems):
        solution, *_ = np.linalg.lstsq(M[:, columns], b, rcond=None)
        residual = b - M[:, columns] @ solution
        scale = 1.0 + float(np.max(np.abs(b))) if b.size else 1.0
        if float(np.max(np.abs(residual), initial=0.0)) > 1e-9 * scale:
            zero = False
        if index == 0:
            numeric = {result.names[k]: float(v) for k, v in zip(columns, solution)}
    result.numeric_coefficients = numeric
    result.grade = TensorGrade(ZeroStatus.ZERO_NUMERIC if zero else ZeroStatus.NONZERO)
    return result
