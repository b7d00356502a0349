"""
Implication audit: for every curvature condition with known consequences, the
consequences are verified on the chart whenever the hypothesis holds.

A consequence that fails while its hypothesis holds is reported as a red flag; the row
carries the witness of the failing identity, which is the discrepancy certificate.
A hypothesis that does not hold makes its rows NotApplicable. Equivalences that hold
on every semi-Riemannian manifold are audited unconditionally.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .conditions import cond_tensor, condition
from .venzi import venzi, venzi_dichotomy
from .roter import generalized_roter, roter, trace_identity
from .verdict import Status, Verdict, holds_status, not_applicable
from ..expr.expression import ZERO, Expr
from ..geometry.chart import is_riemannian
from ..tensor import operations as ops
from ..tensor.tensor import Tensor

logger = logging.getLogger(__name__)


@dataclass
class Consequence:
    """
    One listed consequence.

    ``build`` and ``iff`` take (checks, L) and return a Verdict or a Tensor that must
    vanish. With ``iff`` the row is the equivalence of both sides; ``same_scalar``
    also requires the extracted scalars of both sides to agree. ``when`` returns a
    reason to skip the row, or None.
    """

    label: str
    build: Callable
    iff: Optional[Callable] = None
    when: Optional[Callable] = None
    same_scalar: bool = False


@dataclass
class Theorem:
    name: str
    hypothesis: Optional[Callable]
    consequences: list = field(default_factory=list)


def row(check_id):
    return lambda checks, L: condition(checks, check_id)


def semi(D, H):
    return lambda checks, L: checks.semisymmetric(D, H)


def pseudo(D, H, A):
    return lambda checks, L: checks.pseudosymmetric(D, H, A)


def tensor(build):
    """Wrap a (suite, L) -> Tensor builder."""
    return lambda checks, L: build(checks.suite, L)


def tachibana_zero(A, H):
    return lambda checks, L: checks.tachibana_zero(A, H)


def either(first, second, check_id):
    """Satisfied when one of two verdict builders is."""

    def build(checks, L):
        a = first(checks, L)
        b = second(checks, L)
        notes = [f"{a.check_id}: {a.status.value}", f"{b.check_id}: {b.status.value}"]
        if a.satisfied or b.satisfied:
            numeric = (a.numeric if a.satisfied else True) and (b.numeric if b.satisfied else True)
            return Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric, notes=notes)
        return a.renamed(check_id, notes=notes)

    return build


def riemannian(checks, L):
    return None if is_riemannian(checks.suite.chart) else "metric is not positive definite at the sample points"


def kappa_nonzero(checks, L):
    return "kappa vanishes" if checks.tester.is_zero(checks.suite.scalar_curvature) else None


def _critical(n):
    return Fraction(-1, n - 1)


def scalar_not_critical(checks, L):
    if checks.tester.is_zero(L - _critical(checks.n)):
        return f"L = -1/(n-1) = {_critical(checks.n)}"
    return None


def scalar_critical(checks, L):
    if checks.tester.is_zero(L - _critical(checks.n)):
        return None
    return "L != -1/(n-1)"


def given(build):
    def when(checks, L):
        verdict = build(checks, L)
        return None if verdict.satisfied else f"{verdict.check_id}: {verdict.status.value}"

    return when


def all_of(*whens):
    def when(checks, L):
        for w in whens:
            reason = w(checks, L)
            if reason:
                return reason
        return None

    return when


# tensors of the listed identities, as (suite, L) -> Tensor that must vanish


def _nS_kg(s):
    return s.S.scaled(s.n) - s.g.scaled(s.scalar_curvature)


def residual(D, H, A, factor):
    """D.H - factor(L) Q(A,H)."""
    return lambda s, L: s.action(D, H) - s.tachibana(A, H).scaled(factor(s, L))


def ricci_square_identity(checks, L=None):
    """S(X,X2)S(X1,Y) - S(X,X1)S(X2,Y) + g(X2,Y)S2(X,X1) - g(X,X2)S2(X1,Y) in the slots (X1, X2, X, Y)."""
    s = checks.suite
    SS = ops.outer(s.S, s.S)
    gS2 = ops.outer(s.g, s.S2)
    T = SS.permute((2, 1, 0, 3)) - SS.permute((2, 0, 1, 3)) + gS2.permute((1, 3, 2, 0)) - gS2.permute((2, 1, 0, 3))
    return checks.zero("ricci-square-identity", T)


def square_wedge(checks, L=None):
    """(S^S)(X1,X2,X,Y) = 2 (X ^_{S2} Y)(X1,X2)."""
    s = checks.suite
    wedge = ops.wedge_tensor(s.S2, s.g_matrix).permute((2, 3, 0, 1))
    return checks.zero("S^S=2*wedge(S2)", s.SS - wedge.scaled(2))


def einstein_or_flat_scalar(checks, L=None):
    return either(row("einstein"), row("kappa=0"), "einstein-or-kappa=0")(checks, L)


def hypothesis_scalar(s, L):
    return L


N2_FAMILY = "n^2S2-2nkS+k^2g=0"


def _family(*extra_when):
    when = all_of(*extra_when) if extra_when else None
    return [
        Consequence(N2_FAMILY, row(N2_FAMILY), when=when),
        Consequence("einstein(riemannian)", row("einstein"), when=all_of(riemannian, *extra_when)),
    ]


def _E_general(s, L):
    """E - S2 + (n-1)/(n-2) L (nS - kappa g)."""
    n = s.n
    return s.E - s.S2 + _nS_kg(s).scaled(L * Fraction(n - 1, n - 2))


def _E_ricci_pseudo(s, L):
    """E - L kappa g + L n S - S2."""
    return s.E - s.g.scaled(L * s.scalar_curvature) + s.S.scaled(L * s.n) - s.S2


def _E_upper_ricci(s, L):
    """(n-1)E - L(n-1) kappa g - (kappa - L(n-1)n) S + S2."""
    n = s.n
    kappa = s.scalar_curvature
    return (
        s.E.scaled(n - 1) - s.g.scaled(L * kappa * (n - 1)) - s.S.scaled(kappa - L * (n * (n - 1))) + s.S2
    )


def _E_upper_projective(s, L):
    """(n-1)E - L n kappa g + (L n^2 + kappa) S + S2."""
    n = s.n
    kappa = s.scalar_curvature
    return s.E.scaled(n - 1) - s.g.scaled(L * kappa * n) + s.S.scaled(L * (n * n) + kappa) + s.S2


def _E_upper_projective_ricci(s, L):
    """(L-1)(n-1)E + (1 + L(n-1)) kappa S - (1 + L(n^2-1)) S2."""
    n = s.n
    kappa = s.scalar_curvature
    return (
        s.E.scaled((L - 1) * (n - 1))
        + s.S.scaled((L * (n - 1) + 1) * kappa)
        - s.S2.scaled(L * (n * n - 1) + 1)
    )


def _upper_ricci_action(s, L):
    """n R.calS - Q(S,calS) + n L Q(g,calS)."""
    n = s.n
    return s.action("R", "calS").scaled(n) - s.tachibana("S", "calS") + s.tachibana("g", "calS").scaled(L * n)


def _upper_projective_action(s, L):
    """n/(n-1) P.calS - (L - 1/(n-1)^2) Q(S,calS)."""
    n = s.n
    return s.action("P", "calS").scaled(Fraction(n, n - 1)) - s.tachibana("S", "calS").scaled(
        L - Fraction(1, (n - 1) ** 2)
    )


def _scaled_cond(factor):
    def build(checks, L):
        return cond_tensor(checks.suite).scaled(factor(checks.n, L))

    return build


def _square_chain(s, L):
    """n S2 - kappa S, the first half of S2 = kappa/n S = kappa2/n g."""
    return s.S2.scaled(s.n) - s.S.scaled(s.scalar_curvature)


def _scalar_chain(s, L):
    return s.S.scaled(s.scalar_curvature) - s.g.scaled(s.kappa2.value())


THEOREMS = [
    Theorem(
        "wedge(R.S)=wedge(S).wedge(S)/(n-1)",
        lambda checks: condition(checks, "wedge(R.S)=wedge(S).wedge(S)/(n-1)"),
        [Consequence("walker(P,P)", lambda checks, L: checks.walker("P", "P"))],
    ),
    Theorem(
        "walker(P,P)",
        lambda checks: checks.walker("P", "P"),
        [
            Consequence("n(n-1)R.S=kappa*Q(g,S)", row("n(n-1)R.S=kappa*Q(g,S)")),
            Consequence("S^S=g^S2", row("S^S=g^S2")),
        ]
        + _family(),
    ),
    Theorem(
        "venzi(P)",
        lambda checks: venzi(checks, "P"),
        [
            Consequence(
                "W.W=Q(Z,W)", lambda checks, L: checks.equality("W.W=Q(Z,W)", *_venzi_pair(checks.suite))
            ),
            Consequence("dichotomy", lambda checks, L: venzi_dichotomy(checks)),
            Consequence("constant-curvature(riemannian)", row("constant-curvature"), when=riemannian),
        ],
    ),
    Theorem(
        "P.R=L*Q(g,R)",
        lambda checks: checks.pseudosymmetric("P", "R", "g"),
        [
            Consequence(
                "R.R=L*Q(g,R)<=>Q(S,R)=0",
                tensor(residual("R", "R", "g", hypothesis_scalar)),
                iff=tachibana_zero("S", "R"),
            ),
            Consequence("P.S=L*Q(g,S)<=>cond", tensor(residual("P", "S", "g", hypothesis_scalar)), iff=row("cond")),
            Consequence("E=S2-(n-1)/(n-2)*L(nS-kg)", tensor(_E_general)),
        ],
    ),
    Theorem(
        "P.R=0",
        lambda checks: checks.semisymmetric("P", "R"),
        [
            Consequence("R.R=0<=>Q(S,R)=0", semi("R", "R"), iff=tachibana_zero("S", "R")),
            Consequence("P.S=0<=>cond", semi("P", "S"), iff=row("cond")),
            Consequence("E=S2", row("E=S2")),
        ],
    ),
    Theorem(
        "P.R=L*Q(S,R)",
        lambda checks: checks.pseudosymmetric("P", "R", "S"),
        [
            Consequence(
                "R.R=(L+1/(n-1))Q(S,R)",
                tensor(residual("R", "R", "S", lambda s, L: L + Fraction(1, s.n - 1))),
            ),
            Consequence(
                "P.S=0<=>(L+1/(n-1))cond=0",
                semi("P", "S"),
                iff=_scaled_cond(lambda n, L: L + Fraction(1, n - 1)),
            ),
            Consequence(
                "(L-(n-2)/(n-1))(E-S2)=0",
                tensor(lambda s, L: (s.E - s.S2).scaled(L - Fraction(s.n - 2, s.n - 1))),
            ),
        ],
    ),
    Theorem(
        "P.P=L*Q(g,P)",
        lambda checks: checks.pseudosymmetric("P", "P", "g"),
        [
            Consequence(
                "R.P=L*Q(g,P)<=>Q(S,P)=0",
                tensor(residual("R", "P", "g", hypothesis_scalar)),
                iff=tachibana_zero("S", "P"),
            ),
            Consequence(
                "R.R=L*Q(g,R)<=>Q(S,P)=0",
                tensor(residual("R", "R", "g", hypothesis_scalar)),
                iff=tachibana_zero("S", "P"),
            ),
            Consequence(
                "n(n-1)R.S=(n^2L-nL+k)Q(g,S)",
                tensor(
                    lambda s, L: s.action("R", "S").scaled(s.n * (s.n - 1))
                    - s.tachibana("g", "S").scaled(L * (s.n * (s.n - 1)) + s.scalar_curvature)
                ),
            ),
            Consequence("(n-1)E=kS-S2", row("(n-1)E=kS-S2")),
        ]
        + _family()
        + [Consequence("L(nS-kg)=0", tensor(lambda s, L: _nS_kg(s).scaled(L)))],
    ),
    Theorem(
        "P.P=L*Q(S,P)",
        lambda checks: checks.pseudosymmetric("P", "P", "S"),
        [
            Consequence(
                "R.P=L*Q(S,P)<=>Q(S,P)=0",
                tensor(residual("R", "P", "S", hypothesis_scalar)),
                iff=tachibana_zero("S", "P"),
            ),
            Consequence(
                "n(n-1)R.S=(1+(n-1)kL)Q(g,S)",
                tensor(
                    lambda s, L: s.action("R", "S").scaled(s.n * (s.n - 1))
                    - s.tachibana("g", "S").scaled(L * s.scalar_curvature * (s.n - 1) + 1)
                ),
            ),
            Consequence("(n-1)E=kS-S2", row("(n-1)E=kS-S2")),
        ]
        + _family(scalar_not_critical)
        + [Consequence("Lk(nS-kg)=0", tensor(lambda s, L: _nS_kg(s).scaled(L * s.scalar_curvature)))],
    ),
    Theorem(
        "P.P=0",
        lambda checks: checks.semisymmetric("P", "P"),
        [
            Consequence("R.P=0(Q(S,P)=0)", semi("R", "P"), when=given(tachibana_zero("S", "P"))),
            Consequence("(n-1)E=kS-S2", row("(n-1)E=kS-S2")),
            Consequence("n(n-1)R.S=kappa*Q(g,S)", row("n(n-1)R.S=kappa*Q(g,S)")),
            Consequence("S^S=g^S2", row("S^S=g^S2")),
        ]
        + _family(),
    ),
    Theorem(
        "P.calS=L*Q(g,calS)",
        lambda checks: checks.pseudosymmetric("P", "calS", "g"),
        [
            Consequence("S^S=g^S2", row("S^S=g^S2")),
            Consequence("(n-1)E=L(n-1)kg+(k-L(n-1)n)S-S2", tensor(_E_upper_ricci)),
        ]
        + _family(),
    ),
    Theorem(
        "P.calS=0",
        lambda checks: checks.semisymmetric("P", "calS"),
        [
            Consequence("S^S=g^S2", row("S^S=g^S2")),
            Consequence("(n-1)E=kS-S2", row("(n-1)E=kS-S2")),
        ]
        + _family(),
    ),
    Theorem(
        "P.calR=L*Q(g,calR)",
        lambda checks: checks.pseudosymmetric("P", "calR", "g"),
        [
            Consequence("P.S=L*Q(g,S)", tensor(residual("P", "S", "g", hypothesis_scalar))),
            Consequence("R.S=L*Q(g,S)", tensor(residual("R", "S", "g", hypothesis_scalar))),
            Consequence("E=Lkg-LnS+S2", tensor(_E_ricci_pseudo)),
            Consequence("S^S=g^S2", row("S^S=g^S2")),
            Consequence(
                "P.calS=L*Q(g,calS)<=>cond|ricci-square-identity",
                tensor(residual("P", "calS", "g", hypothesis_scalar)),
                iff=either(row("cond"), ricci_square_identity, "cond|ricci-square-identity"),
            ),
        ]
        + _family(),
    ),
    Theorem(
        "P.calR=0",
        lambda checks: checks.semisymmetric("P", "calR"),
        [
            Consequence("R.S=0", semi("R", "S")),
            Consequence("E=S2", row("E=S2")),
            Consequence("nS2=kS", tensor(_square_chain)),
            Consequence("kS=k2*g", tensor(_scalar_chain)),
            Consequence("einstein(kappa!=0)", row("einstein"), when=kappa_nonzero),
            Consequence(
                "P.calS=0<=>cond|ricci-square-identity",
                semi("P", "calS"),
                iff=either(row("cond"), ricci_square_identity, "cond|ricci-square-identity"),
            ),
        ]
        + _family(),
    ),
    Theorem(
        "P.calR=L*Q(S,calR)",
        lambda checks: checks.pseudosymmetric("P", "calR", "S"),
        [
            Consequence("R.R=0(L=-1/(n-1))", semi("R", "R"), when=scalar_critical),
            Consequence("P.S=0", semi("P", "S")),
            Consequence("R.S=0", semi("R", "S")),
            Consequence("E=S2", row("E=S2")),
            Consequence("S^S=g^S2", row("S^S=g^S2")),
            Consequence("nS2=kS", tensor(_square_chain)),
            Consequence("kS=k2*g", tensor(_scalar_chain)),
            Consequence(
                "P.calS=L*Q(g,calS)<=>cond",
                tensor(residual("P", "calS", "g", hypothesis_scalar)),
                iff=row("cond"),
                when=scalar_not_critical,
            ),
        ]
        + _family(scalar_not_critical),
    ),
    Theorem(
        "P.calP=L*Q(g,calP)",
        lambda checks: checks.pseudosymmetric("P", "calP", "g"),
        [
            Consequence("(n-1)E=Lnkg-(Ln^2+k)S-S2", tensor(_E_upper_projective)),
            Consequence(N2_FAMILY, row(N2_FAMILY)),
            Consequence("nR.calS=Q(S,calS)-nLQ(g,calS)(cond)", tensor(_upper_ricci_action), when=given(row("cond"))),
            Consequence("S^S=g^S2", row("S^S=g^S2")),
        ],
    ),
    Theorem(
        "P.calP=L*Q(S,calP)",
        lambda checks: checks.pseudosymmetric("P", "calP", "S"),
        [
            Consequence("(L-1)(n-1)E=-(1+L(n-1))kS+(1+L(n^2-1))S2", tensor(_E_upper_projective_ricci)),
            Consequence(N2_FAMILY, row(N2_FAMILY), when=scalar_not_critical),
            Consequence(
                "n/(n-1)P.calS=(L-1/(n-1)^2)Q(S,calS)(cond)",
                tensor(_upper_projective_action),
                when=all_of(given(row("cond")), scalar_not_critical),
            ),
            Consequence("S^S=g^S2", row("S^S=g^S2")),
        ],
    ),
    Theorem(
        "P.calP=0",
        lambda checks: checks.semisymmetric("P", "calP"),
        [
            Consequence("(n-1)E=kS-S2", row("(n-1)E=kS-S2")),
            Consequence(N2_FAMILY, row(N2_FAMILY)),
            Consequence("nR.calS=Q(S,calS)(cond)", tensor(_upper_ricci_action), when=given(row("cond"))),
            Consequence("S^S=g^S2", row("S^S=g^S2")),
        ],
    ),
    Theorem(
        "g(P.calS)=P.S",
        lambda checks: checks.commutation("P", "S"),
        [
            Consequence("nS2=kS=k^2/n*g", row("nS2=kS=k^2/n*g")),
            Consequence("einstein(kappa!=0)", row("einstein"), when=kappa_nonzero),
        ],
    ),
    Theorem("Q(S,P)=0", lambda checks: condition(checks, "Q(S,P)=0"), [Consequence("einstein|kappa=0", einstein_or_flat_scalar)]),
    Theorem("Q(g,P)=0", lambda checks: condition(checks, "Q(g,P)=0"), [Consequence("einstein", row("einstein"))]),
    Theorem(N2_FAMILY, lambda checks: condition(checks, N2_FAMILY), [Consequence("einstein(riemannian)", row("einstein"), when=riemannian)]),
    Theorem(
        "generalized-roter",
        lambda checks: generalized_roter(checks),
        [Consequence("einstein<=>constant-curvature", row("einstein"), iff=row("constant-curvature"))],
    ),
    Theorem(
        "roter",
        lambda checks: roter(checks),
        [Consequence("roter.trace", lambda checks, L: trace_identity(checks))],
    ),
]

for _H in ("R", "P"):
    THEOREMS.append(
        Theorem(
            f"Q(S,{_H})=0",
            lambda checks, H=_H: checks.tachibana_zero("S", H),
            [
                Consequence(f"P.{_H}=0<=>R.{_H}=0", semi("P", _H), iff=semi("R", _H)),
                Consequence(
                    f"P.{_H}=L*Q(g,{_H})<=>R.{_H}=L*Q(g,{_H})",
                    pseudo("P", _H, "g"),
                    iff=pseudo("R", _H, "g"),
                    same_scalar=True,
                ),
            ],
        )
    )


def _venzi_pair(s):
    return s.action("W", "W"), s.tachibana("Z", "W")


EQUIVALENCES = [
    Consequence("walker(R,P)<=>R.S=0", lambda checks, L: checks.walker("R", "P"), iff=semi("R", "S")),
    Consequence("R.R=0<=>R.P=0", semi("R", "R"), iff=semi("R", "P")),
    Consequence(
        "R.R=L*Q(g,R)<=>R.P=L*Q(g,P)", pseudo("R", "R", "g"), iff=pseudo("R", "P", "g"), same_scalar=True
    ),
    Consequence(
        "gradR=0<=>gradP=0",
        lambda checks, L: checks.zero("gradR=0", checks.suite.gradR),
        iff=lambda checks, L: checks.zero("gradP=0", checks.suite.gradP),
    ),
]
for _D in ("G", "C", "W", "K"):
    EQUIVALENCES.append(Consequence(f"{_D}.R=0<=>{_D}.P=0", semi(_D, "R"), iff=semi(_D, "P")))
    EQUIVALENCES.append(
        Consequence(
            f"{_D}.R=L*Q(g,R)<=>{_D}.P=L*Q(g,P)",
            pseudo(_D, "R", "g"),
            iff=pseudo(_D, "P", "g"),
            same_scalar=True,
        )
    )
EQUIVALENCES += [
    Consequence(
        "P.S=L*Q(g,S)<=>R.S=L*Q(g,S)", pseudo("P", "S", "g"), iff=pseudo("R", "S", "g"), same_scalar=True
    ),
    Consequence("einstein<=>P.skew34", row("einstein"), iff=row("P.skew34")),
    Consequence("einstein<=>P.cyclic234", row("einstein"), iff=row("P.cyclic234")),
    Consequence("einstein<=>cyc(Q(g,P))=0", row("einstein"), iff=row("cyc(Q(g,P))=0")),
    Consequence("kappa(nS-kg)=0<=>cyc(Q(S,P))=0", row("kappa(nS-kg)=0"), iff=row("cyc(Q(S,P))=0")),
    Consequence("einstein<=>ric(P.R)=P.S", row("einstein"), iff=row("ric(P.R)=P.S")),
    Consequence("einstein<=>P.G=0", row("einstein"), iff=semi("P", "G")),
    Consequence("codazzi<=>cyc(gradP).first", row("codazzi"), iff=row("cyc(gradP).first")),
    Consequence("ricci-symmetric<=>cyc(gradP).last", row("ricci-symmetric"), iff=row("cyc(gradP).last")),
    Consequence("g(P.calS)=P.S<=>S^S=2*wedge(S2)", lambda checks, L: checks.commutation("P", "S"), iff=square_wedge),
    Consequence("einstein<=>g(P.calR)=P.R", row("einstein"), iff=lambda checks, L: checks.commutation("P", "R")),
    Consequence("einstein<=>g(P.calP)=P.P", row("einstein"), iff=lambda checks, L: checks.commutation("P", "P")),
    Consequence("einstein<=>P.gct", row("einstein"), iff=row("P.gct")),
]


def _resolve(checks, check_id, value):
    if isinstance(value, Tensor):
        return checks.zero(check_id, value)
    return value


def _scalar_agreement(checks, row_id, first, second):
    """Fails when both sides hold with extracted scalars that differ."""
    if not (first.holds and second.holds) or first.scalar is None or second.scalar is None:
        return None
    difference = first.scalar - second.scalar
    verdict = checks.tester.check(difference)
    if verdict.is_zero:
        return None
    return Verdict(
        check_id=row_id,
        status=Status.FAILS,
        reference=first.reference,
        witness=second.reference,
        point={k: str(v) for k, v in (verdict.point or {}).items()} or None,
        notes=[f"L={first.scalar} vs L={second.scalar}", "red flag: the associated scalars differ"],
    )


def _evaluate(checks, row_id, consequence, L):
    if consequence.iff is None:
        return _resolve(checks, row_id, consequence.build(checks, L))
    first = _resolve(checks, f"{row_id}[lhs]", consequence.build(checks, L))
    second = _resolve(checks, f"{row_id}[rhs]", consequence.iff(checks, L))
    if consequence.same_scalar:
        disagreement = _scalar_agreement(checks, row_id, first, second)
        if disagreement is not None:
            return disagreement
    return checks.equivalence(row_id, first, second)


def _graded(row_id, verdict, hypothesis):
    numeric = verdict.numeric or (hypothesis is not None and hypothesis.numeric)
    notes = list(verdict.notes)
    if verdict.fails and not any(note.startswith("red flag") for note in notes):
        notes.append("red flag: consequence fails although the hypothesis holds")
    if hypothesis is not None and verdict.fails:
        notes.append(f"certificate: hypothesis {hypothesis.check_id} is {hypothesis.status.value}")
    return verdict.renamed(row_id, numeric=numeric, notes=notes)


def audit(checks, theorem):
    """Rows of one theorem, in listing order."""
    hypothesis = theorem.hypothesis(checks)
    ids = [f"{theorem.name} => {c.label}" for c in theorem.consequences]
    if not hypothesis.holds:
        if hypothesis.status is Status.IMPROPER:
            reason = "hypothesis holds improperly; the associated scalar is undefined"
        else:
            reason = f"hypothesis {hypothesis.check_id} is {hypothesis.status.value}"
        return [not_applicable(row_id, reason) for row_id in ids]
    L = hypothesis.scalar if isinstance(hypothesis.scalar, Expr) else ZERO
    rows = []
    for row_id, consequence in zip(ids, theorem.consequences):
        reason = consequence.when(checks, L) if consequence.when else None
        if reason:
            rows.append(not_applicable(row_id, reason))
            continue
        rows.append(_graded(row_id, _evaluate(checks, row_id, consequence, L), hypothesis))
    flagged = [r.check_id for r in rows if r.fails]
    if flagged:
        logger.warning("%s: %d consequence(s) fail on %s", theorem.name, len(flagged), checks.suite.chart.name)
    return rows


def equivalence_rows(checks):
    return [_graded(c.label, _evaluate(checks, c.label, c, None), None) for c in EQUIVALENCES]


def consequence_rows(checks):
    rows = []
    for theorem in THEOREMS:
        rows.extend(audit(checks, theorem))
    return rows + equivalence_rows(checks)
