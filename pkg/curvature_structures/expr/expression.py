"""
Exact scalar fields: a canonical numerator over a product of normalized factors.

``Expr(num, den)`` stands for ``num / prod(factor ** multiplicity)``. Every factor is
normalized by :func:`canonical.normalize_factor` and has at least two terms; monomial
denominators live in the numerator as negative exponents. Factors dividing the
numerator are cancelled by exact trial division, so an Expr is zero exactly when its
numerator is the empty sum.

The canonical form depends on the operands only: a new denominator is split into
perfect powers, and a factor that is an exact multiple of another factor of the same
denominator is divided by it.
"""

import logging
from fractions import Fraction

from .canonical import (
    ONE_KEY,
    Poly,
    atom_label,
    divide_exact,
    divide_factor,
    key_inverse,
    key_mul,
    key_pow,
    normalize_factor,
    perfect_power,
)
from ..errors import EvaluationError, UnsupportedExpressionError

logger = logging.getLogger(__name__)


def _factor_order(factor):
    return (len(factor), factor.frozen())


def _split(poly):
    """Write ``poly`` as unit * monomial * product of normalized factors, perfect powers taken apart."""
    unit, content, rest = normalize_factor(poly)
    if len(rest) < 2:
        return unit * rest.terms.get(ONE_KEY, 1), content, {}
    factors = {}
    pending = [(rest, 1)]
    while pending:
        factor, multiplicity = pending.pop()
        found = perfect_power(factor)
        if found is None:
            factors[factor] = factors.get(factor, 0) + multiplicity
            continue
        root, k = found
        extra_unit, extra_content, root = normalize_factor(root)
        unit = unit * extra_unit ** (k * multiplicity)
        content = key_mul(content, key_pow(extra_content, k * multiplicity))
        pending.append((root, k * multiplicity))
    return unit, content, factors


def _refine(num, den):
    """Divide denominator factors by the other factors of the same denominator they are multiples of."""
    if len(den) < 2:
        return num, den
    den = dict(den)
    changed = True
    while changed:
        changed = False
        ordered = sorted(den, key=_factor_order)
        for small in ordered:
            for big in ordered:
                if big == small:
                    continue
                split = divide_factor(big, small)
                if split is None:
                    continue
                unit, content, rest = split
                m = den.pop(big)
                den[small] += m
                num = num.mul_key(key_pow(key_inverse(content), m), 1 / unit**m)
                if len(rest) > 1:
                    den[rest] = den.get(rest, 0) + m
                elif rest.terms:
                    num = num.scale(1 / rest.terms[ONE_KEY] ** m)
                changed = True
                break
            if changed:
                break
    return num, den


def _product(factors):
    result = Poly.constant(1)
    for factor, multiplicity in factors:
        result = result.mul(factor.pow(multiplicity))
    return result


def _build(num, den):
    """Cancel denominator factors against the numerator and freeze the result."""
    if num.is_zero():
        return ZERO
    num, den = _refine(num, den)
    kept = []
    for factor, multiplicity in sorted(den.items(), key=lambda item: item[0].frozen()):
        while multiplicity:
            quotient = divide_exact(num, factor)
            if quotient is None:
                break
            num = quotient
            multiplicity -= 1
        if multiplicity:
            kept.append((factor, multiplicity))
    if any(len(factor) > len(num) > 1 for factor, _ in kept):
        cancelled = _cancel_into(num, kept)
        if cancelled is not None:
            return cancelled
    return Expr(num, tuple(kept))


def _cancel_into(num, kept):
    """num / F when the non monomial part of num divides a denominator factor F."""
    unit, content, rest = normalize_factor(num)
    for position, (factor, multiplicity) in enumerate(kept):
        if len(factor) <= len(rest):
            continue
        split = divide_factor(factor, rest)
        if split is None:
            continue
        q_unit, q_content, q_rest = split
        den = dict(kept)
        if multiplicity == 1:
            del den[factor]
        else:
            den[factor] = multiplicity - 1
        if len(q_rest) > 1:
            den[q_rest] = den.get(q_rest, 0) + 1
        elif q_rest.terms:
            q_unit = q_unit * q_rest.terms[ONE_KEY]
        top = Poly.monomial(key_mul(content, key_inverse(q_content)), unit / q_unit)
        return _build(top, den)
    return None


class Expr:
    """Immutable exact scalar field on a chart."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=()):
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def constant(cls, value):
        value = Fraction(value)
        if not value:
            return ZERO
        return cls(Poly.constant(value))

    @classmethod
    def atom(cls, atom):
        return cls(Poly.monomial(((((atom, 1),)), ()), 1))

    @classmethod
    def exp(cls, form):
        """exp of a linear form given as {coordinate atom: coefficient}."""
        form = tuple(sorted((atom, Fraction(a)) for atom, a in form.items() if a))
        return cls(Poly.monomial(((), form), 1))

    @classmethod
    def from_poly(cls, poly):
        return cls(poly) if poly.terms else ZERO

    @staticmethod
    def sum(items):
        """Sum many Exprs, adding numerators that share a denominator first."""
        groups = {}
        for item in items:
            if item.num.terms:
                groups.setdefault(item.den, []).append(item.num)
        if not groups:
            return ZERO
        partial = []
        for den, nums in groups.items():
            total = Poly()
            for num in nums:
                total = total.add(num)
            if total.terms:
                partial.append(_build(total, dict(den)) if den else Expr(total))
        result = ZERO
        for item in partial:
            result = result + item
        return result

    def is_zero(self):
        return not self.num.terms

    def is_rational_constant(self):
        return not self.den and (not self.num.terms or (len(self.num) == 1 and ONE_KEY in self.num.terms))

    def constant_value(self):
        """The rational value of a rational constant, else None."""
        if not self.is_rational_constant():
            return None
        return self.num.terms.get(ONE_KEY, Fraction(0))

    def coordinates(self):
        found = set(self.num.coordinates())
        for factor, _ in self.den:
            found |= factor.coordinates()
        return found

    def atoms(self):
        found = set(self.num.atoms())
        for factor, _ in self.den:
            found |= factor.atoms()
        return found

    def has_exp(self):
        return self.num.has_exp() or any(factor.has_exp() for factor, _ in self.den)

    def is_constant(self):
        """True when every partial derivative vanishes (parameters only)."""
        return all(self.derivative(i).is_zero() for i in self.coordinates())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expr.constant(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num.frozen(), tuple((f.frozen(), m) for f, m in self.den)))
        return self._hash

    def __bool__(self):
        return bool(self.num.terms)

    @staticmethod
    def _coerce(value):
        if isinstance(value, Expr):
            return value
        return Expr.constant(value)

    def __add__(self, other):
        other = Expr._coerce(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            if not self.den:
                return Expr.from_poly(self.num.add(other.num))
            return _build(self.num.add(other.num), dict(self.den))
        left = dict(self.den)
        right = dict(other.den)
        common = dict(left)
        for factor, m in right.items():
            common[factor] = max(common.get(factor, 0), m)
        left_scale = _product((f, m - left.get(f, 0)) for f, m in common.items() if m > left.get(f, 0))
        right_scale = _product((f, m - right.get(f, 0)) for f, m in common.items() if m > right.get(f, 0))
        num = self.num.mul(left_scale).add(other.num.mul(right_scale))
        return _build(num, common)

    __radd__ = __add__

    def __neg__(self):
        if not self.num.terms:
            return self
        return Expr(self.num.neg(), self.den)

    def __sub__(self, other):
        return self + (-Expr._coerce(other))

    def __rsub__(self, other):
        return Expr._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Expr):
            other = Fraction(other)
            if not other or not self.num.terms:
                return ZERO
            return Expr(self.num.scale(other), self.den)
        if not self.num.terms or not other.num.terms:
            return ZERO
        num = self.num.mul(other.num)
        if not self.den and not other.den:
            return Expr(num)
        den = dict(self.den)
        for factor, m in other.den:
            den[factor] = den.get(factor, 0) + m
        return _build(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise EvaluationError("division by zero")
        unit, content, factors = _split(self.num)
        num = _product(self.den).mul_key(key_inverse(content), 1 / unit)
        return _build(num, factors)

    def __truediv__(self, other):
        if not isinstance(other, Expr):
            other = Fraction(other)
            if not other:
                raise EvaluationError("division by zero")
            return self * (1 / other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Expr._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        if not self.den:
            return Expr.from_poly(self.num.pow(k))
        return Expr(self.num.pow(k), tuple((f, m * k) for f, m in self.den))

    def derivative(self, index):
        """Exact partial derivative along the coordinate with the given index."""
        if not self.num.terms:
            return ZERO
        if not self.den:
            return Expr.from_poly(self.num.derivative(index))
        factors = [f for f, _ in self.den]
        plain = _product((f, 1) for f in factors)
        top = self.num.derivative(index).mul(plain)
        for position, (factor, multiplicity) in enumerate(self.den):
            d_factor = factor.derivative(index)
            if d_factor.is_zero():
                continue
            others = _product((f, 1) for j, f in enumerate(factors) if j != position)
            top = top.sub(self.num.mul(d_factor).mul(others).scale(multiplicity))
        den = {f: m + 1 for f, m in self.den}
        return _build(top, den)

    def evaluate(self, point):
        """Value at a sample point (see :class:`zero_test.SamplePoint`)."""
        value, _ = self.num.evaluate(point)
        for factor, multiplicity in self.den:
            fvalue, _ = factor.evaluate(point)
            if not fvalue:
                raise EvaluationError("division by zero: denominator vanishes at the point")
            value = value / fvalue**multiplicity
        return value

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Expr({render(self)!r})"


ZERO = Expr(Poly())
ONE = Expr(Poly.constant(1))


def exp_linear_form(expr):
    """Read a linear form in the coordinates out of an Expr, for exp(...)."""
    if expr.den:
        raise UnsupportedExpressionError("exp() argument must be a linear form in the coordinates")
    form = {}
    for (powers, exp_form), c in expr.num.terms.items():
        if exp_form or len(powers) != 1 or powers[0][1] != 1 or powers[0][0][0] != 0:
            raise UnsupportedExpressionError(
                "exp() argument must be a linear form in the coordinates without constant term"
            )
        form[powers[0][0]] = c
    return form


def _render_number(value):
    return str(value)


def _render_form(form):
    pieces = []
    for index, (coordinate, a) in enumerate(form):
        name = atom_label(coordinate)
        if a == 1:
            text = name
        elif a == -1:
            text = "-" + name
        else:
            text = f"{a}*{name}"
        if index and not text.startswith("-"):
            text = "+" + text
        pieces.append(text)
    return "".join(pieces)


def _render_key(key):
    powers, form = key
    parts = []
    for atom, e in powers:
        label = atom_label(atom)
        parts.append(label if e == 1 else f"{label}^{e}")
    if form:
        parts.append(f"exp({_render_form(form)})")
    return "*".join(parts)


def _render_term(key, c):
    if key == ONE_KEY:
        return _render_number(c)
    body = _render_key(key)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{_render_number(c)}*{body}"


def render_poly(poly):
    if not poly.terms:
        return "0"
    pieces = []
    for index, (key, c) in enumerate(sorted(poly.terms.items())):
        if index == 0:
            pieces.append(_render_term(key, c))
        elif c < 0:
            pieces.append("-" + _render_term(key, -c))
        else:
            pieces.append("+" + _render_term(key, c))
    return "".join(pieces)


def render(expr):
    """Canonical text: ascending terms, negative powers and factors pulled below the line."""
    if not expr.num.terms:
        return "0"
    lowest = {}
    for powers, _ in expr.num.terms:
        for atom, e in powers:
            if e < 0:
                lowest[atom] = min(lowest.get(atom, 0), e)
    shift = tuple(sorted((atom, -e) for atom, e in lowest.items()))
    top = expr.num.mul_key((shift, ())) if shift else expr.num
    below = []
    if shift:
        below.append(_render_key((shift, ())))
    for factor, multiplicity in expr.den:
        text = "(" + render_poly(factor) + ")"
        below.append(text if multiplicity == 1 else f"{text}^{multiplicity}")
    if not below:
        return render_poly(top)
    if len(top) == 1:
        (key, c), = top.terms.items()
        if c.denominator != 1:
            below.insert(0, str(c.denominator))
            c = Fraction(c.numerator)
        above = _render_term(key, c)
    else:
        above = "(" + render_poly(top) + ")"
    if len(below) == 1 and (below[0].startswith("(") or "*" not in below[0]):
        return f"{above}/{below[0]}"
    return f"{above}/({'*'.join(below)})"
