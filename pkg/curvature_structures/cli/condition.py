"""
The condition mini-language of ``curvstruct check``::

    cond   := side "=" side
    side   := "0" | "L" "*" q | q | action
    action := NAME "." NAME
    q      := "Q" "(" NAME "," NAME ")"

e.g. ``P.calS = 0``, ``R.R = L*Q(g,R)``, ``P.S = R.S``, ``Q(S,P) = 0``.
"""

import logging
from dataclasses import dataclass

from pyparsing import Group, Keyword, Literal, ParseException, Regex, Suppress

from ..errors import ConditionSyntaxError, ConditionValenceError, UnknownNameError
from ..structures.checks import ACTED_NAMES, ACTING_NAMES

logger = logging.getLogger(__name__)

# (upper, lower) slot counts of the tensors a curvature operator can act on
VALENCES = {
    "R": (0, 4),
    "S": (0, 2),
    "P": (0, 4),
    "C": (0, 4),
    "W": (0, 4),
    "K": (0, 4),
    "G": (0, 4),
    "g": (0, 2),
    "calR": (1, 3),
    "calS": (1, 1),
    "calP": (1, 3),
}
SYMMETRIC = ("g", "S", "S2", "E", "Z")


@dataclass(frozen=True)
class Side:
    """One side of a condition: kind is "zero", "action", "q" or "scaled_q"."""

    kind: str
    first: str = None
    second: str = None

    @property
    def valence(self):
        if self.kind == "zero":
            return None
        upper, lower = VALENCES[self.second]
        return upper, lower + 2

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "action":
            return f"{self.first}.{self.second}"
        q = f"Q({self.first},{self.second})"
        return "L*" + q if self.kind == "scaled_q" else q


@dataclass(frozen=True)
class Condition:
    left: Side
    right: Side

    @property
    def check_id(self):
        return f"{self.left}={self.right}"


def _grammar():
    name = Regex(r"[A-Za-z][A-Za-z0-9]*")
    zero = Literal("0").setParseAction(lambda toks: Side("zero"))
    q = Suppress(Keyword("Q")) + Suppress("(") + name + Suppress(",") + name + Suppress(")")
    plain_q = q.copy().setParseAction(lambda toks: Side("q", toks[0], toks[1]))
    scaled_q = (Suppress(Keyword("L")) + Suppress("*") + q).setParseAction(
        lambda toks: Side("scaled_q", toks[0], toks[1])
    )
    action = (name + Suppress(".") + name).setParseAction(lambda toks: Side("action", toks[0], toks[1]))
    side = zero | scaled_q | plain_q | action
    return Group(side) + Suppress("=") + Group(side)


GRAMMAR = _grammar()


def _validate(side):
    if side.kind == "zero":
        return
    if side.kind == "action" and side.first not in ACTING_NAMES:
        raise UnknownNameError(f"{side.first!r} is not a curvature operator; known: {' '.join(ACTING_NAMES)}")
    if side.kind != "action" and side.first not in SYMMETRIC:
        raise UnknownNameError(f"{side.first!r} is not a symmetric (0,2) tensor; known: {' '.join(SYMMETRIC)}")
    if side.second not in ACTED_NAMES:
        raise UnknownNameError(f"{side.second!r} cannot be acted on; known: {' '.join(ACTED_NAMES)}")


def parse_condition(text):
    """
    Parse and validate a condition.

    Raises ConditionSyntaxError, UnknownNameError or ConditionValenceError.
    """
    try:
        left, right = GRAMMAR.parseString(text, parseAll=True)
    except ParseException as e:
        raise ConditionSyntaxError(f"syntax error at position {e.loc} in {text!r}: {e.msg}")
    condition = Condition(left[0], right[0])
    for side in (condition.left, condition.right):
        _validate(side)
    kinds = {condition.left.kind, condition.right.kind}
    if kinds == {"zero"}:
        raise ConditionSyntaxError(f"{text!r} compares 0 with 0")
    if "scaled_q" in kinds and "action" not in kinds:
        raise ConditionSyntaxError(f"{text!r}: L*Q(A,H) must be compared with an action D.H")
    if "zero" not in kinds and condition.left.valence != condition.right.valence:
        raise ConditionValenceError(
            f"{condition.left} has valence {condition.left.valence}, {condition.right} has {condition.right.valence}"
        )
    logger.debug("parsed condition %s", condition.check_id)
    return condition


def _tensor(suite, side):
    if side.kind == "action":
        return suite.action(side.first, side.second)
    return suite.tachibana(side.first, side.second)


def run_condition(checks, condition):
    """Dispatch a parsed condition to the matching classifier check."""
    left, right = condition.left, condition.right
    if left.kind in ("zero", "scaled_q"):
        left, right = right, left
    suite = checks.suite
    if right.kind == "zero":
        if left.kind == "action":
            return checks.semisymmetric(left.first, left.second)
        return checks.tachibana_zero(left.first, left.second)
    if right.kind == "scaled_q":
        if left.second == right.second:
            return checks.pseudosymmetric(left.first, left.second, right.first)
        return checks.ratio(condition.check_id, _tensor(suite, left), _tensor(suite, right))
    return checks.equality(condition.check_id, _tensor(suite, left), _tensor(suite, right))
