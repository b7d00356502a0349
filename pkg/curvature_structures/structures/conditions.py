"""
Scalar and tensorial conditions on a curvature suite: Einstein-like conditions, Ricci
identities, cyclic identities of P and its covariant derivative, trace identities and
suite self-checks.

Most rows are "tensor = 0" checks listed in ``ZERO_CONDITIONS`` in report order; the
rank conditions are numeric by nature and live in their own functions.
"""

import logging
from fractions import Fraction

import numpy as np
import scipy.linalg

from .verdict import Status, Verdict, from_grade, holds_status, not_applicable
from ..errors import EvaluationError, UnknownNameError
from ..expr.zero_test import ZeroStatus
from ..tensor import operations as ops
from ..tensor.tensor import Tensor

logger = logging.getLogger(__name__)

RANK_POINTS = 4
RANK_THRESHOLD = 1e-8
EIGEN_IMAGINARY_TOLERANCE = 1e-9


def kappa_gradient(suite):
    kappa = suite.scalar_curvature
    entries = {(i,): kappa.derivative(i) for i in range(suite.n)}
    return Tensor.from_entries(suite.n, (False,), {k: v for k, v in entries.items() if v}, "dkappa")


def codazzi_tensor(suite):
    """(nabla_X S)(Y,Z) - (nabla_Y S)(X,Z) with X, Y, Z in slot order."""
    gradS = suite.gradS
    return gradS.permute((1, 2, 0)) - gradS.permute((0, 2, 1))


def cond_tensor(suite):
    """R(Y,X1,X2,SX) + R(Y,X2,X1,SX) - R(X,X1,X2,SY) - R(X,X2,X1,SY) in the slots (X, Y, X1, X2)."""
    rs = suite.rs_tensor
    return (
        rs.permute((3, 0, 1, 2)) + rs.permute((3, 1, 0, 2)) - rs.permute((2, 0, 1, 3)) - rs.permute((2, 1, 0, 3))
    ).renamed("cond")


def gradient_cyclic_first(suite):
    """(nabla_X1 P)(X2,X3,X,Y) + (nabla_X2 P)(X3,X1,X,Y) + (nabla_X3 P)(X1,X2,X,Y)."""
    return ops.second_bianchi_sum(suite.gradP)


def gradient_cyclic_last(suite):
    """(nabla_X1 P)(X,Y,X2,X3) + (nabla_X2 P)(X,Y,X3,X1) + (nabla_X3 P)(X,Y,X1,X2)."""
    front = suite.gradP.permute((1, 2, 3, 4, 0))
    moved = front.permute((0, 3, 4, 1, 2))
    return ops.cyclic_sum(moved, [(1, 2, 0, 3, 4), (2, 0, 1, 3, 4)], "cyc(gradP)")


def einstein_family(suite, scale_first):
    """n^2 S2 - 2n kappa S + kappa^2 g, or n S2 - 2 kappa S + kappa2 g."""
    n = suite.n
    kappa = suite.scalar_curvature
    if scale_first:
        return suite.S2.scaled(n * n) - suite.S.scaled(kappa * (2 * n)) + suite.g.scaled(kappa * kappa)
    return suite.S2.scaled(n) - suite.S.scaled(kappa * 2) + suite.g.scaled(suite.kappa2.value())


def ricci_semisymmetry_identity(suite):
    """n(n-1) R.S - kappa Q(g,S)."""
    n = suite.n
    return suite.action("R", "S").scaled(n * (n - 1)) - suite.tachibana("g", "S").scaled(suite.scalar_curvature)


def wedge_hypothesis(suite):
    """The tensor of X ^_{R.S} Y - (1/(n-1)) (^S . ^S)(X, Y)."""
    left = ops.wedge_general(suite.action("R", "S"), suite.g_matrix)
    right = ops.endomorphism_action(ops.Endomorphism.of_wedge(suite.S), suite.wedge_S)
    return left - right.scaled(Fraction(1, suite.n - 1))


def projective_product_identity(suite):
    SS = suite.SS
    return ops.endomorphism_action(suite.endomorphism("P"), SS) - ops.endomorphism_action(suite.endomorphism("R"), SS)


def ricci_of_action(suite):
    """ric(P.R) - P.S: contraction commutes with the action of P."""
    return ops.contract(suite.action("P", "R"), 0, 3, ginv=suite.ginv_matrix) - suite.action("P", "S")


ZERO_CONDITIONS = (
    ("einstein", lambda s: s.Z),
    ("kappa=0", lambda s: s.kappa),
    ("kappa-constant", kappa_gradient),
    ("codazzi", codazzi_tensor),
    ("ricci-symmetric", lambda s: s.gradS),
    ("n(n-1)R.S=kappa*Q(g,S)", ricci_semisymmetry_identity),
    ("S^S=g^S2", lambda s: s.SS - ops.kulkarni_nomizu(s.g, s.S2)),
    ("n^2S2-2nkS+k^2g=0", lambda s: einstein_family(s, True)),
    ("nS2-2kS+k2g=0", lambda s: einstein_family(s, False)),
    ("kappa(nS-kg)=0", lambda s: (s.S.scaled(s.n) - s.g.scaled(s.scalar_curvature)).scaled(s.scalar_curvature)),
    ("E=S2", lambda s: s.E - s.S2),
    ("(n-1)E=kS-S2", lambda s: s.E.scaled(s.n - 1) - s.S.scaled(s.scalar_curvature) + s.S2),
    ("cond", cond_tensor),
    ("cyc(gradP).first", gradient_cyclic_first),
    ("cyc(gradP).last", gradient_cyclic_last),
    ("constant-curvature", lambda s: s.W),
    ("P.skew12", lambda s: s.P + s.P.permute((1, 0, 2, 3))),
    ("P.bianchi1", lambda s: ops.cyclic_sum(s.P, [(1, 2, 0, 3), (2, 0, 1, 3)])),
    ("P.skew34", lambda s: s.P + s.P.permute((0, 1, 3, 2))),
    ("P.cyclic234", lambda s: ops.cyclic_sum(s.P, [(0, 2, 3, 1), (0, 3, 1, 2)])),
    ("ric(C)=0", lambda s: s.ricci_of(s.C)),
    ("ric(K)=-kappa/(n-2)*g", lambda s: s.ricci_of(s.K) + s.g.scaled(s.scalar_curvature * Fraction(1, s.n - 2))),
    ("ric(P)=0", lambda s: s.ricci_of(s.P)),
    ("ric(W)=Z", lambda s: s.ricci_of(s.W) - s.Z),
    ("grad(g)=0", lambda s: s.grad_g),
    ("R.bianchi2", lambda s: ops.second_bianchi_sum(s.gradR)),
    ("P.S=R.S", lambda s: s.action("P", "S") - s.action("R", "S")),
    ("P.(S^S)=R.(S^S)", projective_product_identity),
    ("cyc(Q(g,P))=0", lambda s: ops.cyclic_pair_sum(s.tachibana("g", "P"))),
    ("cyc(Q(S,P))=0", lambda s: ops.cyclic_pair_sum(s.tachibana("S", "P"))),
    ("Q(g,P)=0", lambda s: s.tachibana("g", "P")),
    ("Q(S,P)=0", lambda s: s.tachibana("S", "P")),
    ("ric(P.R)=P.S", ricci_of_action),
    ("wedge(R.S)=wedge(S).wedge(S)/(n-1)", wedge_hypothesis),
)

_BUILDERS = dict(ZERO_CONDITIONS)


def condition(checks, check_id):
    """A registered condition row by id."""
    if check_id in _BUILDERS:
        return checks.zero(check_id, _BUILDERS[check_id](checks.suite))
    if check_id in _SPECIAL:
        return _SPECIAL[check_id](checks)
    raise UnknownNameError(f"unknown condition {check_id!r}")


def _rank(M, scale):
    if scale == 0.0:
        return 0
    return int(np.sum(scipy.linalg.svdvals(M) > RANK_THRESHOLD * scale))


def _matrices(checks):
    suite = checks.suite
    for point in checks.tester.points(RANK_POINTS):
        try:
            yield point, suite.S.evaluate(point), suite.chart.metric_at(point)
        except (EvaluationError, ZeroDivisionError, OverflowError):
            continue


def _quasi_einstein_rank(S, g):
    """Smallest rank of S - alpha g over the real generalized eigenvalues alpha, with that alpha."""
    scale = max(float(np.max(np.abs(S))), float(np.max(np.abs(g))), 1e-300)
    best = (_rank(S, scale), 0.0)
    for alpha in scipy.linalg.eigvals(S, g):
        if abs(alpha.imag) > EIGEN_IMAGINARY_TOLERANCE * (1 + abs(alpha)):
            continue
        shifted = S - alpha.real * g
        candidate = (_rank(shifted, scale * (1 + abs(alpha.real))), float(alpha.real))
        best = min(best, candidate)
    return best


def _rank_condition(checks, check_id, rank_of, describe):
    def compute():
        seen = 0
        notes = []
        for point, S, g in _matrices(checks):
            rank, detail = rank_of(S, g)
            seen += 1
            if rank > 1:
                return Verdict(
                    check_id=check_id,
                    status=Status.FAILS,
                    point={k: str(v) for k, v in point.as_dict().items()},
                    value=f"rank={rank}",
                    notes=[describe(detail)],
                )
            if not notes:
                notes.append(describe(detail))
        if not seen:
            return not_applicable(check_id, "every sample point hit a pole of S")
        return Verdict(check_id=check_id, status=Status.HOLDS_NUMERIC, numeric=True, notes=notes)

    return checks.cached(check_id, compute)


def quasi_einstein(checks):
    """rank(S - alpha g) <= 1 for some alpha, at every sample point."""
    return _rank_condition(
        checks, "quasi-einstein", _quasi_einstein_rank, lambda alpha: f"alpha={alpha:.6g} at the first point"
    )


def ricci_simple(checks):
    def rank_of(S, g):
        scale = max(float(np.max(np.abs(S))), float(np.max(np.abs(g))))
        return _rank(S, scale), None

    return _rank_condition(checks, "ricci-simple", rank_of, lambda _: "rank(S) <= 1 at the sample points")


def conformal_dimension_three(checks):
    """C vanishes identically in dimension 3."""
    check_id = "C=0(n=3)"
    if checks.n != 3:
        return checks.cached(check_id, lambda: not_applicable(check_id, "dimension is not 3"))
    return checks.zero(check_id, checks.suite.C)


def generalized_curvature(checks, name):
    """The generalized curvature tensor axioms of a suite tensor, properness from its covariant derivative."""
    check_id = f"{name}.gct"

    def compute():
        suite = checks.suite
        D = suite.tensor(name)
        nabla = suite.tensor(f"grad{name}") if name in ("R", "P") else None
        report = ops.check_gct(D, checks.tester, nabla)
        parts = [("skew12", report.skew12), ("bianchi1", report.first_bianchi), ("pairs", report.pair_symmetry)]
        if report.proper is not None:
            parts.append(("bianchi2", report.proper))
        notes = [f"{label}: {grade.status.value}" for label, grade in parts]
        for label, grade in parts[:3]:
            if not grade.is_zero:
                failed = from_grade(check_id, grade, notes)
                failed.notes.append(f"{label} fails")
                return failed
        numeric = any(grade.status is ZeroStatus.ZERO_NUMERIC for _, grade in parts[:3])
        return Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric, notes=notes)

    return checks.cached(check_id, compute)


def einstein_chain(checks):
    """n S2 = kappa S = kappa^2/n g."""
    check_id = "nS2=kS=k^2/n*g"

    def compute():
        suite = checks.suite
        n = suite.n
        kappa = suite.scalar_curvature
        first = suite.S2.scaled(n) - suite.S.scaled(kappa)
        second = suite.S.scaled(kappa) - suite.g.scaled(kappa * kappa * Fraction(1, n))
        numeric = False
        for part, tensor in (("nS2=kS", first), ("kS=k^2/n*g", second)):
            grade = tensor.grade(checks.tester)
            if not grade.is_zero:
                return from_grade(check_id, grade, [f"{part} fails"])
            numeric = numeric or grade.status is ZeroStatus.ZERO_NUMERIC
        return Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric)

    return checks.cached(check_id, compute)


_SPECIAL = {
    "quasi-einstein": quasi_einstein,
    "ricci-simple": ricci_simple,
    "nS2=kS=k^2/n*g": einstein_chain,
    "C=0(n=3)": conformal_dimension_three,
    "R.gct": lambda checks: generalized_curvature(checks, "R"),
    "P.gct": lambda checks: generalized_curvature(checks, "P"),
}

CONDITION_ORDER = (
    ["einstein", "quasi-einstein", "ricci-simple"]
    + [check_id for check_id, _ in ZERO_CONDITIONS[1:]]
    + ["nS2=kS=k^2/n*g", "C=0(n=3)", "R.gct", "P.gct"]
)


def condition_rows(checks):
    return [condition(checks, check_id) for check_id in CONDITION_ORDER]
