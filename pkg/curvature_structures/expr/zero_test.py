"""
Randomized zero testing at seeded rational sample points.

A canonical Expr is zero exactly when its numerator is the empty sum, so the sampled
branch is only taken for nonzero canonical forms (or when numeric-only mode is on).
It either finds a witness or reports a numeric zero.
"""

import enum
import logging
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .canonical import COORDINATE, atom_label
from ..errors import EvaluationError, IndeterminateError

logger = logging.getLogger(__name__)

MAX_BATCHES = 5


class ZeroStatus(enum.Enum):
    ZERO_SYMBOLIC = "ZeroSymbolic"
    ZERO_NUMERIC = "ZeroNumeric"
    NONZERO = "NonZero"


@dataclass
class ZeroVerdict:
    status: ZeroStatus
    point: dict = None
    value: float = None
    scale: float = 0.0

    @property
    def is_zero(self):
        return self.status is not ZeroStatus.NONZERO

    @property
    def relative(self):
        """|value| against the largest term met while evaluating it."""
        if self.value is None:
            return 0.0
        return abs(self.value) / (1 + self.scale)


class SamplePoint:
    """
    Lazily drawn values for the coordinates and symbols of a chart.

    Each value depends only on (seed, batch, index, label), so different expressions
    tested with the same seed see the same point.
    """

    def __init__(self, seed, batch, index, positive=(), coordinate_names=None, fixed=None, strict=False):
        self.seed = seed
        self.batch = batch
        self.index = index
        self.positive = set(positive)
        self.coordinate_names = coordinate_names or {}
        self.values = dict(fixed or {})
        self.strict = strict

    @classmethod
    def explicit(cls, coordinates, table=None):
        """A point with given values: coordinates by index, symbols by label ("a", "f", "f'")."""
        fixed = {}
        for i, v in enumerate(coordinates):
            if v is not None:
                fixed[("x", i)] = v if isinstance(v, float) else Fraction(v)
        for label, value in (table or {}).items():
            fixed[label] = value if isinstance(value, float) else Fraction(value)
        return cls(0, 0, 0, fixed=fixed, strict=True)

    def _rng(self, label):
        entropy = [self.seed, self.batch, self.index, zlib.crc32(label.encode())]
        return np.random.default_rng(np.random.SeedSequence(entropy))

    def coordinate(self, index):
        key = ("x", index)
        if key not in self.values:
            if self.strict:
                raise EvaluationError(f"missing value for coordinate {index + 1}")
            name = self.coordinate_names.get(index, f"x{index + 1}")
            rng = self._rng(name)
            value = Fraction(int(rng.integers(1, 22)), 7)
            if name not in self.positive and rng.integers(0, 2):
                value = -value
            self.values[key] = value
        return self.values[key]

    def atom(self, atom):
        if atom[0] == COORDINATE:
            return self.coordinate(atom[1])
        label = atom_label(atom)
        if label not in self.values:
            if self.strict:
                raise EvaluationError(f"missing value for symbol {label!r}")
            rng = self._rng(label)
            self.values[label] = Fraction(int(rng.integers(1, 21)), 5)
        return self.values[label]

    def as_dict(self):
        """Readable snapshot of the values drawn so far."""
        out = {}
        for key, value in self.values.items():
            if isinstance(key, tuple):
                out[self.coordinate_names.get(key[1], f"x{key[1] + 1}")] = value
            else:
                out[key] = value
        return dict(sorted(out.items()))


def eval_at(e, point, table=None):
    """
    Evaluate an Expr at an explicit point.

    Parameters:
    e (Expr): the expression.
    point (sequence or SamplePoint): coordinate values in chart order.
    table (dict): values of parameters and function symbols keyed by label.

    Returns:
    Fraction when every input is rational and no exp factor occurs, a float otherwise.
    """
    if not isinstance(point, SamplePoint):
        point = SamplePoint.explicit(point, table)
    return e.evaluate(point)


def magnitude(e, point):
    """Value of e at the point plus the largest term magnitude met while evaluating it."""
    value, biggest = e.num.evaluate(point)
    scale = 1
    for factor, multiplicity in e.den:
        fvalue, fbiggest = factor.evaluate(point)
        if not fvalue:
            raise EvaluationError("division by zero: denominator vanishes at the point")
        value = value / fvalue**multiplicity
        scale = scale * abs(fvalue) ** multiplicity
    return value, biggest / scale


@dataclass
class ZeroTester:
    """
    Seeded oracle deciding whether an Expr vanishes.

    Parameters:
    seed (int): generator seed; same seed gives the same verdicts.
    tolerance (float): relative tolerance of numeric zero verdicts.
    samples (int): number of sample points per batch.
    positive (iterable): coordinate names that must stay positive.
    numeric_only (bool): skip the symbolic shortcut.
    """

    seed: int = 0
    tolerance: float = 1e-9
    samples: int = 12
    positive: frozenset = frozenset()
    coordinate_names: dict = field(default_factory=dict)
    numeric_only: bool = False

    def point(self, batch, index):
        return SamplePoint(self.seed, batch, index, self.positive, self.coordinate_names)

    def points(self, count, batch=0):
        return [self.point(batch, index) for index in range(count)]

    def check(self, e):
        if e.is_zero():
            return ZeroVerdict(ZeroStatus.ZERO_NUMERIC if self.numeric_only else ZeroStatus.ZERO_SYMBOLIC)
        if e.is_rational_constant():
            return ZeroVerdict(ZeroStatus.NONZERO, {}, float(e.constant_value()))
        for batch in range(MAX_BATCHES):
            evaluated = 0
            for index in range(self.samples):
                point = self.point(batch, index)
                try:
                    value, scale = magnitude(e, point)
                except (EvaluationError, ZeroDivisionError, OverflowError):
                    continue
                evaluated += 1
                if abs(value) >= self.tolerance * (1 + scale):
                    return ZeroVerdict(ZeroStatus.NONZERO, point.as_dict(), float(value), float(scale))
            if evaluated:
                logger.debug("nonzero canonical form vanishes at %d sample points", evaluated)
                return ZeroVerdict(ZeroStatus.ZERO_NUMERIC)
            logger.debug("sample batch %d hit poles at every point", batch)
        raise IndeterminateError(f"expression has a pole at every one of {MAX_BATCHES} sample batches")

    def is_zero(self, e):
        return self.check(e).is_zero
