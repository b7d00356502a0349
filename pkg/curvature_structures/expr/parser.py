import logging

from pyparsing import (
    Forward,
    Keyword,
    Literal,
    Optional,
    ParseException,
    Regex,
    Suppress,
    ZeroOrMore,
)

from .canonical import coordinate_atom, function_atom, parameter_atom
from .expression import Expr, exp_linear_form
from ..errors import (
    ExpressionSyntaxError,
    UnknownIdentifierError,
    UnsupportedExpressionError,
)

logger = logging.getLogger(__name__)


class ExpressionParser:
    """
    Parser for scalar fields on a chart.

    Grammar (whitespace insensitive)::

        expr   := term (("+"|"-") term)*
        term   := factor (("*"|"/") factor)*
        factor := "-" factor | base ("^" integer)?
        base   := integer | ident primes? | "exp" "(" expr ")" | "(" expr ")"

    Rationals are written as quotients of integers, "1/6".

    Parameters:
    coordinates (list): coordinate names in chart order.
    parameters (iterable): parameter names.
    functions (dict): function name -> index of its argument coordinate.
    """

    def __init__(self, coordinates, parameters=(), functions=None):
        self.coordinates = {name: index for index, name in enumerate(coordinates)}
        self.parameters = set(parameters)
        self.functions = dict(functions or {})
        self.grammar = self._make_grammar()

    def _identifier(self, name, primes):
        if primes and name not in self.functions:
            raise UnsupportedExpressionError(f"{name!r} is not a function and cannot be differentiated")
        if name in self.coordinates:
            return Expr.atom(coordinate_atom(self.coordinates[name], name))
        if name in self.parameters:
            return Expr.atom(parameter_atom(name))
        if name in self.functions:
            return Expr.atom(function_atom(name, self.functions[name], primes))
        raise UnknownIdentifierError(name)

    def _make_grammar(self):
        plus = Literal("+")
        minus = Literal("-")
        mul = Literal("*")
        div = Literal("/")
        lparent = Suppress("(")
        rparent = Suppress(")")

        integer = Regex(r"\d+")
        integer.setParseAction(lambda toks: Expr.constant(int(toks[0])))

        ident = Regex(r"[A-Za-z][A-Za-z0-9]*('*)")
        ident.setParseAction(
            lambda toks: self._identifier(toks[0].rstrip("'"), len(toks[0]) - len(toks[0].rstrip("'")))
        )

        expr = Forward()

        def make_exp(toks):
            return Expr.exp(exp_linear_form(toks[0]))

        exp_call = Suppress(Keyword("exp")) + lparent + expr + rparent
        exp_call.setParseAction(make_exp)

        base = exp_call | integer | ident | (lparent + expr + rparent)

        exponent = Regex(r"-?\d+")

        def make_power(toks):
            value = toks[0]
            if len(toks) == 1:
                return value
            return value**int(toks[1])

        power = base + Optional(Suppress("^") + exponent)
        power.setParseAction(make_power)

        factor = Forward()

        def make_negative(toks):
            return -toks[0]

        negative = Suppress(minus) + factor
        negative.setParseAction(make_negative)
        factor <<= negative | power

        def make_term(toks):
            value = toks[0]
            for i in range(1, len(toks), 2):
                value = value * toks[i + 1] if toks[i] == "*" else value / toks[i + 1]
            return value

        term = factor + ZeroOrMore((mul | div) + factor)
        term.setParseAction(make_term)

        def make_sum(toks):
            value = toks[0]
            for i in range(1, len(toks), 2):
                value = value + toks[i + 1] if toks[i] == "+" else value - toks[i + 1]
            return value

        expr <<= term + ZeroOrMore((plus | minus) + term)
        expr.setParseAction(make_sum)
        return expr

    def parse(self, text):
        """
        Parse text into a canonical Expr.

        Raises ExpressionSyntaxError with the failing position, UnknownIdentifierError,
        DerivativeOrderError or UnsupportedExpressionError.
        """
        try:
            result = self.grammar.parseString(text, parseAll=True)
        except ParseException as e:
            raise ExpressionSyntaxError(text, e.loc, e.msg)
        return result[0]


def parse(text, chart):
    """Parse an expression against the identifiers of a chart."""
    return chart.parser.parse(text)
