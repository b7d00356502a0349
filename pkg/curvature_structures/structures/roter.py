"""
Roter type decompositions of the curvature tensor:

    R = c1 g^g + c2 g^S + c3 S^S                      (Roter)
    R = ... + c4 g^S2 + c5 S^S2 + c6 S2^S2            (generalized Roter)
"""

import logging

from .checks import decomposition_verdict
from .linear import decompose
from .verdict import Verdict, from_grade, holds_status, not_applicable
from ..errors import EvaluationError
from ..expr.expression import Expr
from ..expr.zero_test import ZeroStatus
from ..tensor import operations as ops

logger = logging.getLogger(__name__)

CERTIFICATE_POINTS = 3


def roter_basis(suite):
    return [suite.gg, suite.gS, suite.SS]


def generalized_roter_basis(suite):
    return roter_basis(suite) + [
        ops.kulkarni_nomizu(suite.g, suite.S2, "g^S2"),
        ops.kulkarni_nomizu(suite.S, suite.S2, "S^S2"),
        ops.kulkarni_nomizu(suite.S2, suite.S2, "S2^S2"),
    ]


def _decomposition_check(checks, check_id, basis):
    def compute():
        suite = checks.suite
        decomposition = decompose(suite.R, basis(suite), checks.tester)
        verdict = decomposition_verdict(check_id, decomposition, suite.R, checks.tester)
        return verdict.model_copy(update={"scalar": decomposition})

    return checks.cached(check_id, compute)


def roter(checks):
    """R in the span of g^g, g^S and S^S; ``scalar`` carries the Decomposition."""
    return _decomposition_check(checks, "roter", roter_basis)


def generalized_roter(checks):
    return _decomposition_check(checks, "generalized-roter", generalized_roter_basis)


def trace_identity(checks):
    """
    Ricci contraction of a Roter decomposition:

        2 c3 S2 = (2(n-1) c1 + kappa c2) g + ((n-2) c2 + 2 kappa c3 - 1) S
    """
    check_id = "roter.trace"

    def compute():
        found = roter(checks)
        decomposition = found.scalar
        if not found.holds or decomposition is None or decomposition.coefficients is None:
            return not_applicable(check_id, "no exact Roter decomposition")
        suite = checks.suite
        n = suite.n
        kappa = suite.scalar_curvature
        c1, c2, c3 = (decomposition.coefficients[name] for name in ("c1", "c2", "c3"))
        lhs = suite.S2.scaled(c3 * 2)
        g_factor = c1 * (2 * (n - 1)) + kappa * c2
        s_factor = c2 * (n - 2) + kappa * c3 * 2 - 1
        residual = lhs - suite.g.scaled(g_factor) - suite.S.scaled(s_factor)
        verdict = from_grade(check_id, residual.grade(checks.tester))
        if verdict.fails:
            verdict.notes.append("red flag: the contracted decomposition does not reproduce S")
        return verdict

    return checks.cached(check_id, compute)


def _sample_text(tensor, index, point):
    value = tensor[index]
    if not value:
        return "0"
    return f"{float(value.evaluate(point)):.6g}"


def product_certificate(checks):
    """
    R = S^S, reported with a discrepancy certificate when it fails: the symbolic
    residual at the witness and R, S^S and the residual at a few sample points.
    """
    check_id = "R=S^S"

    def compute():
        suite = checks.suite
        tester = checks.tester
        residual = (suite.R - suite.SS).renamed("R-S^S")
        grade = residual.grade(tester)
        if grade.is_zero:
            numeric = grade.status is ZeroStatus.ZERO_NUMERIC
            return Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric)
        index = tuple(i - 1 for i in grade.index)
        label = ",".join(str(i) for i in grade.index)
        notes = [
            f"certificate: R[{label}] = {suite.R[index] or 0}",
            f"certificate: (S^S)[{label}] = {suite.SS[index] or 0}",
            f"certificate: residual[{label}] = {grade.component}",
        ]
        shown = 0
        for point in tester.points(CERTIFICATE_POINTS * 2):
            if shown == CERTIFICATE_POINTS:
                break
            try:
                values = [_sample_text(T, index, point) for T in (suite.R, suite.SS, residual)]
            except (EvaluationError, ZeroDivisionError, OverflowError):
                continue
            shown += 1
            at = ",".join(f"{k}={v}" for k, v in point.as_dict().items())
            notes.append(f"certificate: at {at}: R={values[0]} S^S={values[1]} residual={values[2]}")
        logger.info("R = S^S fails on %s at [%s]", suite.chart.name, label)
        return from_grade(check_id, grade, notes)

    return checks.cached(check_id, compute)


def proportional_product(checks):
    """R = L * S^S for a scalar field L."""
    suite = checks.suite
    return checks.ratio("R=L*S^S", suite.R, suite.SS)


def roter_rows(checks):
    rows = [roter(checks), trace_identity(checks), generalized_roter(checks)]
    rows.append(product_certificate(checks))
    rows.append(proportional_product(checks))
    return rows


def coefficient(verdict, name):
    """An exact coefficient of a Roter verdict, or None."""
    decomposition = verdict.scalar
    if decomposition is None or decomposition.coefficients is None:
        return None
    value = decomposition.coefficients.get(name)
    return value if isinstance(value, Expr) else None
