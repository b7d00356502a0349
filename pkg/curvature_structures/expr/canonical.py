"""
Canonical sums of extended monomials.

A monomial key is a pair ``(powers, form)``:

- ``powers`` is a sorted tuple of ``(atom, exponent)`` with non zero integer exponents.
  Exponents may be negative, so a key is a unit and ``1/x1`` or ``1/a`` never needs
  a denominator.
- ``form`` is a sorted tuple of ``(coordinate atom, Fraction)``: the linear form of
  the single merged ``exp(...)`` factor.

An atom is one of

- ``(COORDINATE, index, name)``
- ``(PARAMETER, name)``
- ``(FUNCTION, name, argument index, order)`` with order 0, 1 or 2 (f, f', f'').

A :class:`Poly` maps keys to non zero Fractions.
"""

import math
from fractions import Fraction
from functools import lru_cache

from ..errors import DerivativeOrderError, EvaluationError

COORDINATE = 0
PARAMETER = 1
FUNCTION = 2

MAX_DERIVATIVE_ORDER = 2

ONE_KEY = ((), ())


def coordinate_atom(index, name):
    return (COORDINATE, index, name)


def parameter_atom(name):
    return (PARAMETER, name)


def function_atom(name, argument, order=0):
    if order > MAX_DERIVATIVE_ORDER:
        raise DerivativeOrderError(name, order)
    return (FUNCTION, name, argument, order)


def atom_label(atom):
    """Display name of an atom: x1, a, f, f', f''."""
    if atom[0] == FUNCTION:
        return atom[1] + "'" * atom[3]
    if atom[0] == COORDINATE:
        return atom[2]
    return atom[1]


def _merge(left, right, sign=1):
    if not right:
        return left
    if not left and sign == 1:
        return right
    merged = dict(left)
    for name, value in right:
        total = merged.get(name, 0) + sign * value
        if total:
            merged[name] = total
        else:
            merged.pop(name, None)
    return tuple(sorted(merged.items()))


def key_mul(a, b):
    return (_merge(a[0], b[0]), _merge(a[1], b[1]))


def key_div(a, b):
    return (_merge(a[0], b[0], -1), _merge(a[1], b[1], -1))


def key_inverse(a):
    return (tuple((atom, -e) for atom, e in a[0]), tuple((c, -v) for c, v in a[1]))


def key_pow(a, k):
    if k == 0:
        return ONE_KEY
    return (tuple((atom, e * k) for atom, e in a[0]), tuple((c, v * k) for c, v in a[1]))


def key_atoms(key):
    return [atom for atom, _ in key[0]]


def key_derivative(key, index):
    """Partial derivative of a monomial along a coordinate, as (coefficient, key) pairs."""
    powers, form = key
    out = []
    for atom, e in powers:
        if atom[0] == COORDINATE and atom[1] == index:
            out.append((Fraction(e), key_mul(key, (((atom, -1),), ()))))
        elif atom[0] == FUNCTION and atom[2] == index:
            following = function_atom(atom[1], atom[2], atom[3] + 1)
            delta = tuple(sorted(((atom, -1), (following, 1))))
            out.append((Fraction(e), key_mul(key, (delta, ()))))
    for coordinate, a in form:
        if coordinate[1] == index:
            out.append((a, key))
    return out


class Poly:
    """Finite map from monomial keys to non zero rational coefficients. Treated as immutable."""

    __slots__ = ("terms", "_frozen")

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}
        self._frozen = None

    @classmethod
    def constant(cls, value):
        value = Fraction(value)
        return cls({ONE_KEY: value} if value else {})

    @classmethod
    def monomial(cls, key, coefficient=1):
        coefficient = Fraction(coefficient)
        return cls({key: coefficient} if coefficient else {})

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(ONE_KEY) == 1

    def frozen(self):
        if self._frozen is None:
            self._frozen = tuple(sorted(self.terms.items()))
        return self._frozen

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.frozen())

    def __lt__(self, other):
        return self.frozen() < other.frozen()

    def __repr__(self):
        return f"Poly({self.frozen()!r})"

    def add(self, other, sign=1):
        if not other.terms:
            return self
        if not self.terms and sign == 1:
            return other
        terms = dict(self.terms)
        for key, c in other.terms.items():
            total = terms.get(key, 0) + sign * c
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return Poly(terms)

    def sub(self, other):
        return self.add(other, -1)

    def neg(self):
        return Poly({key: -c for key, c in self.terms.items()})

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return Poly()
        if factor == 1:
            return self
        return Poly({key: c * factor for key, c in self.terms.items()})

    def mul_key(self, key, coefficient=1):
        if key == ONE_KEY:
            return self.scale(coefficient)
        return Poly({key_mul(k, key): c * coefficient for k, c in self.terms.items()})

    def mul(self, other):
        if not self.terms or not other.terms:
            return Poly()
        if len(other.terms) == 1:
            (key, c), = other.terms.items()
            return self.mul_key(key, c)
        if len(self.terms) == 1:
            (key, c), = self.terms.items()
            return other.mul_key(key, c)
        terms = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = key_mul(ka, kb)
                total = terms.get(key, 0) + ca * cb
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
        return Poly(terms)

    def pow(self, k):
        result = Poly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    def derivative(self, index):
        terms = {}
        for key, c in self.terms.items():
            for factor, new_key in key_derivative(key, index):
                total = terms.get(new_key, 0) + c * factor
                if total:
                    terms[new_key] = total
                else:
                    terms.pop(new_key, None)
        return Poly(terms)

    def atoms(self):
        found = set()
        for powers, _ in self.terms:
            found.update(atom for atom, _ in powers)
        return found

    def coordinates(self):
        """Indices of every coordinate the sum depends on, through powers, functions or exp."""
        found = set()
        for powers, form in self.terms:
            for atom, _ in powers:
                if atom[0] == COORDINATE:
                    found.add(atom[1])
                elif atom[0] == FUNCTION:
                    found.add(atom[2])
            found.update(c[1] for c, _ in form)
        return found

    def has_exp(self):
        return any(form for _, form in self.terms)

    def content_key(self):
        """Componentwise minimum of the exponents and exp coefficients over all terms."""
        keys = list(self.terms)
        if not keys:
            return ONE_KEY
        dims, position = _dimensions(self)
        vectors = [_vector(key, position) for key in keys]
        low = tuple(min(v[i] for v in vectors) for i in range(len(dims)))
        return _key(low, dims)

    def evaluate(self, point):
        """
        Evaluate at a sample point.

        Returns (value, largest absolute term). The value is a Fraction when no exp
        factor is present and every atom value is rational, a float otherwise.
        """
        total = Fraction(0)
        biggest = 0
        for (powers, form), c in self.terms.items():
            value = c
            for atom, e in powers:
                base = point.atom(atom)
                if not base and e < 0:
                    raise EvaluationError(f"division by zero: {atom_label(atom)} = 0")
                value = value * base**e
            if form:
                exponent = sum(float(a) * float(point.coordinate(c[1])) for c, a in form)
                value = float(value) * math.exp(exponent)
            total = total + value
            biggest = max(biggest, abs(value))
        return total, biggest


def _dimensions(*polys):
    dims = set()
    for p in polys:
        for powers, form in p.terms:
            dims.update((0, atom) for atom, _ in powers)
            dims.update((1, c) for c, _ in form)
    dims = sorted(dims)
    return dims, {d: i for i, d in enumerate(dims)}


def _vector(key, position):
    vec = [0] * len(position)
    for atom, e in key[0]:
        vec[position[(0, atom)]] = e
    for c, a in key[1]:
        vec[position[(1, c)]] = a
    return tuple(vec)


def _key(vec, dims):
    powers = tuple((d[1], v) for d, v in zip(dims, vec) if v and d[0] == 0)
    form = tuple((d[1], Fraction(v)) for d, v in zip(dims, vec) if v and d[0] == 1)
    return (powers, form)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def divide_exact(dividend, divisor, max_steps=5000):
    """
    Exact quotient ``dividend / divisor`` or None when the division leaves a remainder.

    Keys are compared in a lexicographic group order on exponent vectors, so the
    quotient terms are bounded below by trail(dividend) / trail(divisor).
    """
    if divisor.is_zero():
        raise EvaluationError("division by the zero polynomial")
    if dividend.is_zero():
        return Poly()
    if len(divisor) == 1:
        (key, c), = divisor.terms.items()
        return dividend.mul_key(key_inverse(key), 1 / c)
    dims, position = _dimensions(dividend, divisor)
    remainder = {_vector(k, position): c for k, c in dividend.terms.items()}
    ordered = sorted(((_vector(k, position), c) for k, c in divisor.terms.items()), reverse=True)
    lead_v, lead_c = ordered[0]
    floor = _vsub(min(remainder), ordered[-1][0])
    quotient = {}
    for _ in range(max_steps):
        if not remainder:
            return Poly({_key(v, dims): c for v, c in quotient.items()})
        top = max(remainder)
        q_v = _vsub(top, lead_v)
        if q_v < floor:
            return None
        q_c = remainder[top] / lead_c
        quotient[q_v] = q_c
        for v, c in ordered:
            t = _vadd(q_v, v)
            value = remainder.get(t, 0) - q_c * c
            if value:
                remainder[t] = value
            else:
                remainder.pop(t, None)
    return None


def normalize_factor(poly):
    """
    Split ``poly`` as ``unit * monomial(content) * factor``.

    The factor has no monomial content, primitive integer coefficients and a positive
    coefficient on its first term in ascending key order.
    """
    content = poly.content_key()
    shifted = poly.mul_key(key_inverse(content)) if content != ONE_KEY else poly
    coefficients = list(shifted.terms.values())
    denominators = 1
    for c in coefficients:
        denominators = denominators * c.denominator // math.gcd(denominators, c.denominator)
    numerators = 0
    for c in coefficients:
        numerators = math.gcd(numerators, (c * denominators).numerator)
    scale = Fraction(denominators, numerators)
    first = min(shifted.terms)
    if shifted.terms[first] < 0:
        scale = -scale
    return 1 / scale, content, shifted.scale(scale)


def _integer_root(value, k):
    """Exact non negative integer k-th root, or None."""
    if value < 0:
        return None
    try:
        guess = int(round(value ** (1.0 / k)))
    except OverflowError:
        return None
    for root in (guess - 1, guess, guess + 1):
        if root >= 0 and root**k == value:
            return root
    return None


def _rational_root(value, k):
    if value < 0:
        if k % 2 == 0:
            return None
        root = _rational_root(-value, k)
        return None if root is None else -root
    top = _integer_root(value.numerator, k)
    bottom = _integer_root(value.denominator, k)
    if top is None or bottom is None:
        return None
    return Fraction(top, bottom)


def _root_key(vec, k, dims):
    """The monomial whose k-th power has exponent vector ``vec``, or None."""
    root = []
    for d, v in zip(dims, vec):
        r = Fraction(v) / k
        if d[0] == 0 and r.denominator != 1:
            return None
        root.append(int(r) if d[0] == 0 else r)
    return tuple(root)


def _kth_root(poly, k):
    """G with G**k == poly, built from the top term down, or None."""
    dims, position = _dimensions(poly)
    vectors = {_vector(key, position): c for key, c in poly.terms.items()}
    top = max(vectors)
    lead_v = _root_key(top, k, dims)
    floor = _root_key(min(vectors), k, dims)
    lead_c = _rational_root(vectors[top], k)
    if lead_v is None or floor is None or lead_c is None:
        return None
    columns = list(zip(*vectors))
    low = [Fraction(min(column)) / k for column in columns]
    high = [Fraction(max(column)) / k for column in columns]
    root = {lead_v: lead_c}
    scale = k * lead_c ** (k - 1)
    shift = tuple((k - 1) * v for v in lead_v)
    for _ in range(4 * len(poly) + 8):
        candidate = Poly({_key(v, dims): c for v, c in root.items()})
        remainder = poly.sub(candidate.pow(k))
        if remainder.is_zero():
            return candidate
        r_vectors = {_vector(key, position): c for key, c in remainder.terms.items()}
        r_top = max(r_vectors)
        q_v = _vsub(r_top, shift)
        if q_v < floor or q_v in root or any(not low[i] <= v <= high[i] for i, v in enumerate(q_v)):
            return None
        if any(d[0] == 0 and Fraction(v).denominator != 1 for d, v in zip(dims, q_v)):
            return None
        root[tuple(int(v) if d[0] == 0 else v for d, v in zip(dims, q_v))] = r_vectors[r_top] / scale
    return None


@lru_cache(maxsize=4096)
def perfect_power(poly):
    """
    ``(root, k)`` with ``root ** k == poly`` and k prime, or None.

    Only sums of at least three terms can be powers of a sum of two or more terms.
    """
    if len(poly) < 3:
        return None
    for k in (2, 3, 5, 7):
        root = _kth_root(poly, k)
        if root is not None and len(root) > 1:
            return root, k
    return None


@lru_cache(maxsize=1 << 16)
def divide_factor(big, small):
    """``normalize_factor(big / small)`` when the division is exact, else None."""
    quotient = divide_exact(big, small)
    return None if quotient is None else normalize_factor(quotient)
