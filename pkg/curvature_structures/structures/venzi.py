"""
Venzi spaces: 1-forms Pi with

    Pi(X1) D(X2,X3,X4,X5) + Pi(X2) D(X3,X1,X4,X5) + Pi(X3) D(X1,X2,X4,X5) = 0.

The condition is linear in the components of Pi. The coefficient matrix is sampled at
a few points; constant solutions come from the common null space, field solutions
from an exact solve on a pivot set. Every candidate is verified symbolically.
"""

import logging
from collections import defaultdict
from fractions import Fraction

import numpy as np
import scipy.linalg

from .linear import numeric_rank, solve_exact
from .verdict import Status, Verdict, holds_status, not_applicable
from ..errors import EvaluationError, IndeterminateError
from ..expr.expression import ONE, ZERO, Expr
from ..expr.zero_test import ZeroStatus
from ..tensor.tensor import Tensor

logger = logging.getLogger(__name__)

SAMPLE_POINTS = 4
NULL_SPACE_RCOND = 1e-8
LIFT_DENOMINATOR = 1000


def venzi_rows(D):
    """Coefficient rows of the condition: (X1,...,X5) index -> {component of Pi: Expr}."""
    n = D.dimension
    rows = defaultdict(lambda: defaultdict(list))
    for (a, b, c, d), value in D.entries():
        for i in range(n):
            rows[(i, a, b, c, d)][i].append(value)
            rows[(b, i, a, c, d)][i].append(value)
            rows[(a, b, i, c, d)][i].append(value)
    out = {}
    for row, columns in rows.items():
        entries = {col: Expr.sum(items) for col, items in columns.items()}
        entries = {col: value for col, value in entries.items() if value}
        if entries:
            out[row] = entries
    return dict(sorted(out.items()))


def venzi_residual(D, form, name=None):
    """The (0,5) tensor of the condition for a given 1-form."""
    buckets = defaultdict(list)
    for row, columns in venzi_rows(D).items():
        for col, value in columns.items():
            if form[col]:
                buckets[row].append(value * form[col])
    return Tensor.from_buckets(D.dimension, (False,) * 5, buckets, name or f"venzi({D.name})")


def _matrix(rows, n, point):
    M = np.zeros((len(rows), n))
    for r, columns in enumerate(rows.values()):
        for col, value in columns.items():
            M[r, col] = float(value.evaluate(point))
    return M


def _lift(vector):
    return [Fraction(float(x)).limit_denominator(LIFT_DENOMINATOR) for x in vector]


def _constant_candidates(matrices, n, nullity):
    """Constant 1-forms common to every sampled matrix, in reduced echelon form."""
    scaled = [M / max(1.0, float(np.max(np.abs(M)))) for M in matrices]
    N = scipy.linalg.null_space(np.vstack(scaled), rcond=NULL_SPACE_RCOND)
    if N.shape[1] != nullity:
        return None
    B = N.T
    _, pivots = numeric_rank(B)
    pivots = sorted(pivots)
    reduced = np.linalg.solve(B[:, pivots], B)
    return [[Expr.constant(c) for c in _lift(row)] for row in reduced]


def _field_candidates(rows, n, point, M):
    """Pi with one free component set to 1, the pivot components solved exactly."""
    rank, columns = numeric_rank(M)
    columns = sorted(columns)
    free = [c for c in range(n) if c not in columns]
    _, row_pivots = numeric_rank(M[:, columns].T)
    keys = list(rows)
    chosen = [keys[r] for r in sorted(row_pivots)]
    if len(chosen) != rank:
        return []
    candidates = []
    for f in free:
        matrix = [[rows[key].get(c, ZERO) for c in columns] for key in chosen]
        rhs = [-rows[key].get(f, ZERO) for key in chosen]
        solution = solve_exact(matrix, rhs, point) if rank else []
        form = [ZERO] * n
        form[f] = ONE
        for c, value in zip(columns, solution):
            form[c] = value
        candidates.append(form)
    return candidates


def norm_squared(form, ginv):
    n = len(form)
    terms = []
    for i in range(n):
        for j in range(n):
            if ginv[i][j] and form[i] and form[j]:
                terms.append(ginv[i][j] * form[i] * form[j])
    return Expr.sum(terms)


def venzi(checks, name):
    """
    Solve the Venzi condition of a (0,4) suite tensor.

    Returns a Verdict whose ``scalar`` is the list of verified 1-forms (Expr lists),
    ``one_forms`` their renderings and ``null_forms`` their null flags.
    """
    check_id = f"venzi({name})"

    def compute():
        suite = checks.suite
        tester = checks.tester
        D = suite.tensor(name)
        n = suite.n
        grade = D.grade(tester)
        if grade.is_zero:
            return Verdict(
                check_id=check_id,
                status=Status.IMPROPER,
                numeric=grade.status is ZeroStatus.ZERO_NUMERIC,
                notes=[f"{name} vanishes identically; every 1-form satisfies the condition"],
            )
        rows = venzi_rows(D)
        sampled = []
        for point in tester.points(SAMPLE_POINTS):
            try:
                sampled.append((point, _matrix(rows, n, point)))
            except (EvaluationError, ZeroDivisionError, OverflowError):
                continue
        if not sampled:
            raise IndeterminateError(f"{name} has a pole at every Venzi sample point")
        ranked = [(numeric_rank(M)[0], point, M) for point, M in sampled]
        rank, point, M = max(ranked, key=lambda item: item[0])
        if rank == n:
            _, pivots = numeric_rank(M.T)
            witness = list(rows)[sorted(pivots)[0]]
            return Verdict(
                check_id=check_id,
                status=Status.FAILS,
                witness=tuple(i + 1 for i in witness),
                point={k: str(v) for k, v in point.as_dict().items()},
                notes=[f"coefficient matrix has full column rank {n} at the point; no nonzero 1-form"],
            )
        nullity = n - rank
        candidates = _constant_candidates([M for _, M in sampled], n, nullity)
        if candidates is None:
            try:
                candidates = _field_candidates(rows, n, point, M)
            except EvaluationError:
                candidates = []
        verified = []
        numeric = False
        for form in candidates:
            residual = venzi_residual(D, form).grade(tester)
            if residual.status is ZeroStatus.NONZERO:
                continue
            numeric = numeric or residual.status is ZeroStatus.ZERO_NUMERIC
            verified.append(form)
        if len(verified) < nullity:
            basis = scipy.linalg.null_space(M, rcond=NULL_SPACE_RCOND)
            return Verdict(
                check_id=check_id,
                status=Status.HOLDS_NUMERIC,
                numeric=True,
                one_forms=[[f"{x:.6g}" for x in column] for column in basis.T],
                notes=["numeric-only basis: no exact lift verified"],
            )
        ginv = suite.ginv_matrix
        nulls = [tester.check(norm_squared(form, ginv)).is_zero for form in verified]
        return Verdict(
            check_id=check_id,
            status=holds_status(numeric),
            numeric=numeric,
            scalar=verified,
            one_forms=[[str(c) for c in form] for form in verified],
            null_forms=nulls,
        )

    return checks.cached(check_id, compute)


def venzi_dichotomy(checks):
    """
    On a P-space: a non-null 1-form forces W = 0; a null one makes the chart a W-space
    with the same 1-form.
    """
    check_id = "venzi(P).dichotomy"

    def compute():
        found = venzi(checks, "P")
        if not found.holds or not found.scalar:
            return not_applicable(check_id, "not a P-space with an exact 1-form")
        suite = checks.suite
        tester = checks.tester
        numeric = found.numeric
        for form, null in zip(found.scalar, found.null_forms):
            if null:
                tensor = venzi_residual(suite.W, form, "venzi(W)")
            else:
                tensor = suite.W
            grade = tensor.grade(tester)
            if grade.status is ZeroStatus.NONZERO:
                return Verdict(
                    check_id=check_id,
                    status=Status.FAILS,
                    witness=grade.index,
                    notes=["red flag: " + ("W-space condition fails for a null form" if null else "W != 0")],
                )
            numeric = numeric or grade.status is ZeroStatus.ZERO_NUMERIC
        notes = [
            "null form: W-space with the same 1-form" if null else "non-null form: W = 0" for null in found.null_forms
        ]
        return Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric, notes=notes)

    return checks.cached(check_id, compute)
