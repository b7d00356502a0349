"""
Dense tensors of Exprs with declared valence.

Every slot is either contravariant (upper) or covariant. Tensors produced by a
curvature action or a Tachibana operator carry the operator pair (X, Y) as their two
trailing covariant slots and are flagged with ``operator_pair``.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import TensorShapeError
from ..expr.expression import ZERO, Expr
from ..expr.zero_test import ZeroStatus

logger = logging.getLogger(__name__)


@dataclass
class TensorGrade:
    """Zero grade of a whole tensor; ``index`` is the 1-based witness of a NonZero grade."""

    status: ZeroStatus
    index: tuple = None
    point: dict = None
    value: float = None
    component: Expr = None
    relative: float = 0.0

    @property
    def is_zero(self):
        return self.status is not ZeroStatus.NONZERO


class Tensor:
    def __init__(self, components, upper=None, name="T", operator_pair=False):
        self.components = components
        rank = components.ndim
        self.upper = tuple(upper) if upper is not None else (False,) * rank
        if len(self.upper) != rank:
            raise TensorShapeError(f"{name}: {len(self.upper)} slot variances for rank {rank}")
        self.name = name
        self.operator_pair = operator_pair
        self._entries = None

    @classmethod
    def zeros(cls, dimension, upper, name="T", operator_pair=False):
        shape = (dimension,) * len(upper)
        return cls(np.full(shape, ZERO, dtype=object), upper, name, operator_pair)

    @classmethod
    def scalar(cls, value, name="s"):
        components = np.empty((), dtype=object)
        components[()] = value
        return cls(components, (), name)

    @classmethod
    def from_entries(cls, dimension, upper, entries, name="T", operator_pair=False):
        tensor = cls.zeros(dimension, upper, name, operator_pair)
        for index, value in entries.items():
            tensor.components[index] = value
        return tensor

    @classmethod
    def from_buckets(cls, dimension, upper, buckets, name="T", operator_pair=False):
        """Build from index -> list of Expr summands."""
        tensor = cls.zeros(dimension, upper, name, operator_pair)
        for index, items in buckets.items():
            total = Expr.sum(items) if len(items) > 1 else items[0]
            if total:
                tensor.components[index] = total
        return tensor

    @classmethod
    def from_matrix(cls, matrix, upper=(False, False), name="T"):
        n = len(matrix)
        entries = {(i, j): matrix[i][j] for i in range(n) for j in range(n) if matrix[i][j]}
        return cls.from_entries(n, upper, entries, name)

    @property
    def dimension(self):
        return self.components.shape[0] if self.components.ndim else 0

    @property
    def rank(self):
        return self.components.ndim

    @property
    def valence(self):
        """(contravariant count, covariant count)."""
        r = sum(self.upper)
        return r, self.rank - r

    def __getitem__(self, index):
        return self.components[index]

    def value(self):
        """The Expr of a rank 0 tensor."""
        return self.components[()]

    def entries(self):
        """Nonzero components as (index, Expr), ascending lexicographic, cached."""
        if self._entries is None:
            if self.rank == 0:
                value = self.components[()]
                self._entries = [((), value)] if value else []
            else:
                self._entries = [(index, v) for index, v in np.ndenumerate(self.components) if v]
        return self._entries

    def rows(self):
        return {index: value for index, value in self.entries()}

    def is_zero(self):
        return not self.entries()

    def renamed(self, name):
        return Tensor(self.components, self.upper, name, self.operator_pair)

    def _check_compatible(self, other):
        if self.components.shape != other.components.shape or self.upper != other.upper:
            raise TensorShapeError(f"cannot combine {self.name} and {other.name}: valence mismatch")

    def __add__(self, other):
        self._check_compatible(other)
        components = np.asarray(self.components + other.components, dtype=object)
        return Tensor(components, self.upper, f"{self.name}+{other.name}", self.operator_pair)

    def __sub__(self, other):
        self._check_compatible(other)
        components = np.asarray(self.components - other.components, dtype=object)
        return Tensor(components, self.upper, f"{self.name}-{other.name}", self.operator_pair)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, factor, name=None):
        """Multiply every component by a scalar Expr or rational."""
        result = Tensor.zeros(self.dimension, self.upper, name or self.name, self.operator_pair)
        if isinstance(factor, Expr) and factor.is_zero():
            return result
        for index, value in self.entries():
            result.components[index] = value * factor
        return result

    def permute(self, order, name=None):
        """
        Slot permutation: U(X_0, ..., X_m) = T(X_order[0], ..., X_order[m]).

        Parameters:
        order (tuple): a permutation of range(rank).
        """
        if sorted(order) != list(range(self.rank)):
            raise TensorShapeError(f"{order} is not a permutation of the {self.rank} slots of {self.name}")
        upper = [False] * self.rank
        for k, target in enumerate(order):
            upper[target] = self.upper[k]
        result = Tensor.zeros(self.dimension, upper, name or self.name, self.operator_pair)
        for index, value in self.entries():
            moved = [0] * self.rank
            for k, target in enumerate(order):
                moved[target] = index[k]
            result.components[tuple(moved)] = value
        return result

    def evaluate(self, point):
        """Float array of the components at a sample point."""
        values = np.zeros(self.components.shape)
        for index, value in self.entries():
            values[index] = float(value.evaluate(point))
        return values

    def grade(self, tester):
        """Grade the whole tensor as zero: symbolic, numeric, or NonZero with the first witness."""
        numeric = False
        for index, value in self.entries():
            verdict = tester.check(value)
            if verdict.status is ZeroStatus.NONZERO:
                return TensorGrade(
                    ZeroStatus.NONZERO,
                    tuple(i + 1 for i in index),
                    verdict.point,
                    verdict.value,
                    value,
                    verdict.relative,
                )
            numeric = True
        if numeric or tester.numeric_only:
            return TensorGrade(ZeroStatus.ZERO_NUMERIC)
        return TensorGrade(ZeroStatus.ZERO_SYMBOLIC)

    def upper_first(self):
        """The same tensor with its contravariant slots moved to the front, as dumps list them."""
        slots = sorted(range(self.rank), key=lambda s: not self.upper[s])
        if slots == list(range(self.rank)):
            return self
        order = [0] * self.rank
        for position, slot in enumerate(slots):
            order[slot] = position
        return self.permute(tuple(order))

    def dump(self, name=None):
        """Component dump lines ``T[i,j,...] = expr``, 1-based, ascending, contravariant slots first."""
        name = name or self.name
        if self.rank == 0:
            return [f"{name} = {self.value()}"]
        shown = self.upper_first()
        return [f"{name}[{','.join(str(i + 1) for i in index)}] = {value}" for index, value in shown.entries()]

    def __repr__(self):
        r, k = self.valence
        return f"Tensor({self.name!r}, ({r},{k}), n={self.dimension})"
