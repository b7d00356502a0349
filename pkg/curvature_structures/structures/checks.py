"""
Semisymmetric, pseudosymmetric, Walker and commutation checks on a curvature suite.

Every check is memoized by its report id, so that condition rows and theorem
consequence rows share the work.
"""

import logging

from .linear import decompose
from .verdict import Status, Verdict, from_grade, holds_status
from ..expr.zero_test import ZeroStatus
from ..tensor import operations as ops

try:
    from ..utils.telemetry import my_tracer
except ImportError:
    from utils.telemetry import my_tracer

logger = logging.getLogger(__name__)

ACTING_NAMES = ("R", "G", "C", "W", "K", "P")
ACTED_NAMES = ("R", "S", "P", "C", "W", "K", "G", "g", "calR", "calS", "calP")
TACHIBANA_NAMES = ("g", "S")
UPPER_FORMS = {"R": "calR", "S": "calS", "P": "calP"}


def _one_based(index):
    return None if index is None else tuple(i + 1 for i in index)


class Checks:
    """
    Classifier checks of one chart.

    Parameters:
    suite (CurvatureSuite): the curvature data.
    tester (ZeroTester): zero oracle; the chart's seeded tester by default.
    """

    def __init__(self, suite, tester=None):
        self.suite = suite
        self.tester = tester or suite.chart.zero_tester()
        self._verdicts = {}

    @property
    def n(self):
        return self.suite.n

    def cached(self, check_id, compute):
        if check_id not in self._verdicts:
            with my_tracer.start_span("check") as span:
                span.set_attribute("check_id", check_id)
                span.set_attribute("chart", self.suite.chart.name)
                verdict = compute()
                span.set_attribute("status", verdict.status.value)
            logger.debug("%s: %s", check_id, verdict.status.value)
            self._verdicts[check_id] = verdict
        return self._verdicts[check_id]

    def zero(self, check_id, tensor, notes=None):
        """Grade ``tensor = 0``."""
        return self.cached(check_id, lambda: from_grade(check_id, tensor.grade(self.tester), notes))

    def semisymmetric(self, D, H):
        """D.H = 0."""
        return self.zero(f"{D}.{H}=0", self.suite.action(D, H))

    def ratio(self, check_id, lhs, rhs):
        """
        lhs = L * rhs for a scalar field L.

        L is read off the first component where rhs is NonZero and then verified on
        every component. A vanishing rhs makes the condition Improper when lhs vanishes
        too and Fails otherwise.
        """

        def compute():
            tester = self.tester
            reference = None
            numeric = False
            for index, value in rhs.entries():
                verdict = tester.check(value)
                if verdict.status is ZeroStatus.NONZERO:
                    reference = index
                    break
                numeric = True
            if reference is None:
                grade = lhs.grade(tester)
                if grade.status is ZeroStatus.NONZERO:
                    failed = from_grade(check_id, grade)
                    failed.notes.append(f"{rhs.name} vanishes identically")
                    return failed
                return Verdict(
                    check_id=check_id,
                    status=Status.IMPROPER,
                    numeric=numeric or grade.status is ZeroStatus.ZERO_NUMERIC,
                    notes=[f"{rhs.name} and {lhs.name} vanish identically"],
                )
            scalar = lhs[reference] / rhs[reference]
            residual = lhs - rhs.scaled(scalar)
            grade = residual.grade(tester)
            common = dict(scalar=scalar, scalar_text=str(scalar), reference=_one_based(reference))
            if grade.status is ZeroStatus.NONZERO:
                failed = from_grade(check_id, grade)
                failed.notes.append("ratios disagree between the reference and witness components")
                return failed.model_copy(update=common)
            numeric = grade.status is ZeroStatus.ZERO_NUMERIC
            return Verdict(
                check_id=check_id,
                status=holds_status(numeric),
                numeric=numeric,
                constant_type=scalar.is_constant(),
                **common,
            )

        return self.cached(check_id, compute)

    def pseudosymmetric(self, D, H, A):
        """D.H = L * Q(A,H)."""
        suite = self.suite
        return self.ratio(f"{D}.{H}=L*Q({A},{H})", suite.action(D, H), suite.tachibana(A, H))

    def pseudosymmetric_pair(self, D, H):
        """D.H = L1 * Q(g,H) + L2 * Q(S,H)."""
        check_id = f"{D}.{H}=L1*Q(g,{H})+L2*Q(S,{H})"
        suite = self.suite

        def compute():
            target = suite.action(D, H)
            basis = [suite.tachibana("g", H), suite.tachibana("S", H)]
            decomposition = decompose(target, basis, self.tester, ["L1", "L2"])
            return decomposition_verdict(check_id, decomposition, target, self.tester)

        return self.cached(check_id, compute)

    def equality(self, check_id, lhs, rhs):
        return self.zero(check_id, lhs - rhs)

    def walker(self, D1, D2):
        """Cyclic sum of D1.D2 over the three slot pairs."""
        return self.zero(f"walker({D1},{D2})", ops.cyclic_pair_sum(self.suite.action(D1, D2)))

    def commutation(self, D, H):
        """g((D.calH)(...), .) = (D.H)(...), i.e. lowering commutes with the action of D."""
        suite = self.suite
        upper = UPPER_FORMS[H]
        check_id = f"g({D}.{upper})={D}.{H}"

        def compute():
            action = suite.action(D, upper)
            slot = action.upper.index(True)
            lowered = ops.lower_index(action, slot, suite.g_matrix)
            return from_grade(check_id, (lowered - suite.action(D, H)).grade(self.tester))

        return self.cached(check_id, compute)

    def tachibana_zero(self, A, H):
        return self.zero(f"Q({A},{H})=0", self.suite.tachibana(A, H))

    def equivalence(self, check_id, first, second):
        """Holds when two verdicts agree on being satisfied."""

        def compute():
            numeric = first.numeric or second.numeric
            notes = [f"{first.check_id}: {first.status.value}", f"{second.check_id}: {second.status.value}"]
            if first.satisfied == second.satisfied:
                return Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric, notes=notes)
            failing = first if first.fails else second
            return Verdict(
                check_id=check_id,
                status=Status.FAILS,
                witness=failing.witness,
                point=failing.point,
                notes=notes + ["red flag: the two sides of the equivalence disagree"],
            )

        return self.cached(check_id, compute)


def decomposition_verdict(check_id, decomposition, target, tester):
    """Verdict of a linear decomposition; an all-zero family is Improper or Fails."""
    if decomposition.numeric_coefficients is not None:
        status = Status.HOLDS_NUMERIC if decomposition.holds else Status.FAILS
        return Verdict(
            check_id=check_id,
            status=status,
            numeric=True,
            coefficients={k: f"{v:.6g}" for k, v in decomposition.numeric_coefficients.items()},
            notes=["exact solve failed; numeric least squares at the first sample point"],
        )
    grade = decomposition.grade
    notes = []
    if decomposition.dependent:
        notes.append(f"reduced family: {', '.join(decomposition.dependent)} set to 0 (dependent basis)")
    if decomposition.rank == 0:
        if grade.is_zero:
            return Verdict(
                check_id=check_id,
                status=Status.IMPROPER,
                numeric=grade.status is ZeroStatus.ZERO_NUMERIC,
                notes=notes + ["every basis tensor vanishes"],
            )
        failed = from_grade(check_id, target.grade(tester), notes + ["every basis tensor vanishes"])
        return failed
    coefficients = {name: str(value) for name, value in decomposition.coefficients.items()}
    if grade.status is ZeroStatus.NONZERO:
        failed = from_grade(check_id, grade, notes)
        return failed.model_copy(update={"coefficients": coefficients})
    numeric = grade.status is ZeroStatus.ZERO_NUMERIC
    return Verdict(
        check_id=check_id,
        status=holds_status(numeric),
        numeric=numeric,
        coefficients=coefficients,
        notes=notes,
    )
