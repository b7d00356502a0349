"""
Coordinate charts carrying a semi-Riemannian metric.

A chart is loaded from the line-oriented metric-spec format::

    # comment
    dim = 4
    coords = x1 x2 x3 x4
    param a positive
    function f(x2) positive
    domain x1 positive
    g[1,1] = exp(x1)
    ds2 = exp(x1)*dx1^2 + 2*dx1*dx2        # optional line element

Omitted entries are zero. In a line element a cross term ``c*dxi*dxj`` with i != j
sets g[i,j] = g[j,i] = c/2.
"""

import logging
import os
import re
from functools import cached_property

import numpy as np

from ..errors import ChartError, CurvatureError, UnknownNameError
from ..expr.expression import ONE, ZERO, Expr
from ..expr.parser import ExpressionParser
from ..expr.zero_test import ZeroStatus, ZeroTester
from .fixtures import FIXTURES, fixture_text

try:
    from ..utils.db import get_sample_count, get_seed, get_tolerance, is_numeric_only_active
except ImportError:
    from utils.db import get_sample_count, get_seed, get_tolerance, is_numeric_only_active

logger = logging.getLogger(__name__)

SIGNATURE_TOLERANCE = 1e-10

_entry_pattern = re.compile(r"^g\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.+)$")
_param_pattern = re.compile(r"^param\s+([A-Za-z][A-Za-z0-9]*)(\s+positive)?$")
_function_pattern = re.compile(r"^function\s+([A-Za-z][A-Za-z0-9]*)\s*\(\s*([A-Za-z][A-Za-z0-9]*)\s*\)(\s+positive)?$")
_domain_pattern = re.compile(r"^domain\s+([A-Za-z][A-Za-z0-9]*)\s+positive$")


class Chart:
    """
    Validated chart: dimension, coordinates, symbols and metric components.

    Parameters:
    name (str): label used in reports and spans.
    coordinates (list): coordinate names.
    metric (list): n x n nested list of Expr, symmetric.
    parameters (dict): parameter name -> positivity flag.
    functions (dict): function name -> (argument index, positivity flag).
    positive_coordinates (set): coordinates restricted to positive values when sampling.
    """

    def __init__(self, name, coordinates, metric, parameters=None, functions=None, positive_coordinates=(), text=None):
        self.name = name
        self.coordinates = list(coordinates)
        self.dimension = len(self.coordinates)
        self.metric = metric
        self.parameters = dict(parameters or {})
        self.functions = dict(functions or {})
        self.positive_coordinates = set(positive_coordinates)
        self.text = text

    @cached_property
    def parser(self):
        return ExpressionParser(
            self.coordinates,
            self.parameters,
            {name: index for name, (index, _) in self.functions.items()},
        )

    def parse(self, text):
        return self.parser.parse(text)

    def zero_tester(self, seed=None):
        """The seeded zero oracle for this chart, honoring the session settings."""
        return ZeroTester(
            seed=get_seed() if seed is None else seed,
            tolerance=get_tolerance(),
            samples=get_sample_count(),
            positive=frozenset(self.positive_coordinates),
            coordinate_names=dict(enumerate(self.coordinates)),
            numeric_only=is_numeric_only_active(),
        )

    @cached_property
    def determinant(self):
        return _determinant(self.metric, tuple(range(self.dimension)), tuple(range(self.dimension)), {})

    @cached_property
    def inverse(self):
        """Exact inverse metric g^{ij} from cofactors, checked against g g^{-1} = I."""
        n = self.dimension
        det = self.determinant
        if det.is_zero():
            raise ChartError("degenerate metric: det g is identically zero")
        memo = {}
        det_inverse = det.inverse()
        inverse = [[ZERO] * n for _ in range(n)]
        rows = tuple(range(n))
        for i in range(n):
            for j in range(i, n):
                minor = _determinant(
                    self.metric,
                    tuple(r for r in rows if r != j),
                    tuple(c for c in rows if c != i),
                    memo,
                )
                if minor.is_zero():
                    continue
                value = minor * det_inverse
                if (i + j) % 2:
                    value = -value
                inverse[i][j] = value
                inverse[j][i] = value
        self._verify_inverse(inverse)
        return inverse

    def _verify_inverse(self, inverse):
        n = self.dimension
        tester = self.zero_tester()
        for i in range(n):
            for j in range(n):
                total = Expr.sum(inverse[i][k] * self.metric[k][j] for k in range(n) if self.metric[k][j])
                if i == j:
                    total = total - ONE
                if not total.is_zero() and tester.check(total).status is ZeroStatus.NONZERO:
                    raise ChartError(f"inverse metric check failed at entry ({i + 1},{j + 1})")

    def metric_at(self, point):
        """The metric evaluated at a sample point, as a float matrix."""
        n = self.dimension
        values = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if self.metric[i][j]:
                    values[i, j] = float(self.metric[i][j].evaluate(point))
        return values

    def entry_text(self):
        """Metric components in the dump format, upper triangle only."""
        lines = []
        for i in range(self.dimension):
            for j in range(i, self.dimension):
                if self.metric[i][j]:
                    lines.append(f"g[{i + 1},{j + 1}] = {self.metric[i][j]}")
        return lines

    def __repr__(self):
        return f"Chart({self.name!r}, dim={self.dimension})"


def _determinant(matrix, rows, cols, memo):
    """Laplace expansion along the first row of the minor, memoized on (rows, cols)."""
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if len(rows) == 1:
        result = matrix[rows[0]][cols[0]]
    else:
        terms = []
        first = rows[0]
        rest = rows[1:]
        for position, col in enumerate(cols):
            entry = matrix[first][col]
            if entry.is_zero():
                continue
            minor = _determinant(matrix, rest, cols[:position] + cols[position + 1 :], memo)
            if minor.is_zero():
                continue
            term = entry * minor
            terms.append(-term if position % 2 else term)
        result = Expr.sum(terms)
    memo[key] = result
    return result


def _split_terms(text):
    """Split a line element at top level + and - signs, keeping the signs on the terms."""
    terms = []
    depth = 0
    start = 0
    previous = ""
    for position, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char in "+-" and depth == 0 and (previous.isalnum() or previous in ")'"):
            terms.append(text[start:position])
            start = position
        if not char.isspace():
            previous = char
    terms.append(text[start:])
    return [term.strip() for term in terms if term.strip()]


def _split_factors(term):
    factors = []
    depth = 0
    start = 0
    for position, char in enumerate(term):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "*" and depth == 0:
            factors.append(term[start:position])
            start = position + 1
    factors.append(term[start:])
    return [factor.strip() for factor in factors]


def _line_element(text, coordinates, parse, line):
    """Read ``ds2 = ...`` into {(i, j): Expr} with i <= j."""
    differential = re.compile(r"^d(" + "|".join(map(re.escape, coordinates)) + r")(?:\s*\^\s*(\d+))?$")
    anywhere = re.compile(r"\bd(" + "|".join(map(re.escape, coordinates)) + r")\b")
    entries = {}
    for term in _split_terms(text):
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:].strip()
        slots = []
        coefficient = []
        for factor in _split_factors(term):
            match = differential.match(factor)
            if match:
                slots.extend([coordinates.index(match.group(1))] * int(match.group(2) or 1))
            elif anywhere.search(factor):
                raise ChartError(f"differential inside a coefficient in term {term!r}", line)
            else:
                coefficient.append(factor)
        if len(slots) != 2:
            raise ChartError(f"term {term!r} is not quadratic in the differentials", line)
        value = parse("*".join(coefficient)) if coefficient else ONE
        if sign < 0:
            value = -value
        i, j = sorted(slots)
        if i != j:
            value = value / 2
        entries[(i, j)] = entries.get((i, j), ZERO) + value
    return entries


def parse_chart(text, name="chart"):
    """
    Parse and validate a metric spec.

    Raises ChartError on format errors, conflicting symmetric assignments, n < 3 and
    degenerate metrics. Expression errors propagate from the parser.
    """
    dimension = None
    coordinates = None
    parameters = {}
    functions = {}
    positive = set()
    assignments = []
    element = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            try:
                dimension = int(line.split("=", 1)[1])
            except (IndexError, ValueError):
                raise ChartError(f"bad dimension line {raw.strip()!r}", number)
        elif line.startswith("coords"):
            coordinates = line.split("=", 1)[1].split()
        elif line.startswith("param"):
            match = _param_pattern.match(line)
            if not match:
                raise ChartError(f"bad parameter declaration {raw.strip()!r}", number)
            parameters[match.group(1)] = bool(match.group(2))
        elif line.startswith("function"):
            match = _function_pattern.match(line)
            if not match:
                raise ChartError(f"bad function declaration {raw.strip()!r}", number)
            functions[match.group(1)] = (match.group(2), bool(match.group(3)), number)
        elif line.startswith("domain"):
            match = _domain_pattern.match(line)
            if not match:
                raise ChartError(f"bad domain declaration {raw.strip()!r}", number)
            positive.add(match.group(1))
        elif line.startswith("ds2"):
            element = (line.split("=", 1)[1], number)
        elif line.startswith("g"):
            match = _entry_pattern.match(line)
            if not match:
                raise ChartError(f"bad metric entry {raw.strip()!r}", number)
            assignments.append((int(match.group(1)), int(match.group(2)), match.group(3), number))
        else:
            raise ChartError(f"unrecognized line {raw.strip()!r}", number)

    if dimension is None:
        dimension = len(coordinates) if coordinates else None
    if dimension is None:
        raise ChartError("missing dim line")
    if coordinates is None:
        coordinates = [f"x{i + 1}" for i in range(dimension)]
    if len(coordinates) != dimension:
        raise ChartError(f"dim = {dimension} but {len(coordinates)} coordinates are named")
    if dimension < 3:
        raise ChartError(f"dimension must be at least 3, got {dimension}")
    for coordinate in positive:
        if coordinate not in coordinates:
            raise ChartError(f"domain names unknown coordinate {coordinate!r}")
    resolved = {}
    for fname, (argument, flag, number) in functions.items():
        if argument not in coordinates:
            raise ChartError(f"function {fname!r} depends on unknown coordinate {argument!r}", number)
        resolved[fname] = (coordinates.index(argument), flag)

    chart = Chart(name, coordinates, None, parameters, resolved, positive, text)
    entries = {}
    for i, j, body, number in assignments:
        if not (1 <= i <= dimension and 1 <= j <= dimension):
            raise ChartError(f"metric index out of range in g[{i},{j}]", number)
        key = (min(i, j) - 1, max(i, j) - 1)
        value = chart.parse(body)
        if key in entries and entries[key] != value and not (entries[key] - value).is_zero():
            raise ChartError(f"conflicting assignments to g[{i},{j}] and g[{j},{i}]", number)
        entries[key] = value
    if element is not None:
        for key, value in _line_element(element[0], coordinates, chart.parse, element[1]).items():
            if key in entries and not (entries[key] - value).is_zero():
                raise ChartError(f"line element conflicts with g[{key[0] + 1},{key[1] + 1}]", element[1])
            entries[key] = value

    metric = [[ZERO] * dimension for _ in range(dimension)]
    for (i, j), value in entries.items():
        metric[i][j] = value
        metric[j][i] = value
    chart.metric = metric

    det = chart.determinant
    if det.is_zero():
        raise ChartError("degenerate metric: det g is identically zero")
    verdict = chart.zero_tester().check(det)
    if verdict.status is not ZeroStatus.NONZERO:
        raise ChartError("degenerate metric: det g vanishes at every sample point")
    logger.debug("loaded chart %s of dimension %d", name, dimension)
    return chart


def load_chart(source):
    """
    Load a chart from a file path, a built-in example name, or spec text.

    Parameters:
    source (str): path, example name or the spec itself.

    Returns:
    Chart: the validated chart.
    """
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as f:
            text = f.read()
        return parse_chart(text, os.path.splitext(os.path.basename(source))[0])
    if source in FIXTURES:
        return parse_chart(fixture_text(source), source)
    if "=" in source:
        return parse_chart(source)
    raise UnknownNameError(f"no spec file or example named {source!r}")


def inverse_metric(chart):
    return chart.inverse


def signature_at(chart, point):
    """
    Eigenvalue sign counts (positive, negative) of the metric at a point.

    Raises ChartError when an eigenvalue is zero within tolerance.
    """
    values = chart.metric_at(point)
    eigenvalues = np.linalg.eigvalsh(values)
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    if np.any(np.abs(eigenvalues) < SIGNATURE_TOLERANCE * scale):
        raise ChartError("metric is degenerate at the point")
    return int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))


def signature_consistency(chart, count=8, seed=None):
    """
    Signatures met at sample points of the declared domain.

    Returns:
    dict: signature -> number of points; more than one key means the signature changes.
    """
    seen = {}
    for point in chart.zero_tester(seed).points(count):
        try:
            signature = signature_at(chart, point)
        except CurvatureError:
            continue
        seen[signature] = seen.get(signature, 0) + 1
    if len(seen) > 1:
        logger.warning("signature of %s varies across sample points: %s", chart.name, sorted(seen))
    return seen


def is_riemannian(chart, count=8, seed=None):
    seen = signature_consistency(chart, count, seed)
    return bool(seen) and all(negative == 0 for _, negative in seen)
