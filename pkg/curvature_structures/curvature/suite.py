"""
The curvature pipeline of a chart.

Conventions:

- ``Gamma[k, i, j]`` is the Christoffel symbol Gamma^k_ij of the Levi-Civita connection.
- ``calR[i, j, k, m]`` is the m-component of the curvature operator calR(d_i, d_j) d_k,
  built from d Gamma + Gamma Gamma and multiplied by ``CURVATURE_SIGN``.
- ``R = lower(calR, slot 4)``, ``S = contract(R, slots 1 and 4)``.
- Covariant derivatives append the derivative slot last.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from functools import cached_property

from ..errors import TensorShapeError, UnknownNameError
from ..expr.expression import Expr
from ..tensor import operations as ops
from ..tensor.tensor import Tensor

try:
    from ..utils.telemetry import my_tracer
except ImportError:
    from utils.telemetry import my_tracer

logger = logging.getLogger(__name__)

# fixed so that the published component tables are reproduced (R_2323 of the
# exponential warped example is -exp(x1+x2)/2)
CURVATURE_SIGN = -1

VOCABULARY = (
    "g",
    "ginv",
    "Gamma",
    "R",
    "calR",
    "S",
    "calS",
    "S2",
    "kappa",
    "kappa2",
    "E",
    "Z",
    "G",
    "C",
    "W",
    "K",
    "P",
    "calP",
    "gradR",
    "gradS",
    "gradP",
)

CURVATURE_NAMES = ("R", "G", "C", "W", "K", "P")
SYMMETRIC_NAMES = ("g", "S", "S2", "E", "Z")


class CurvatureSuite:
    """
    Lazily computed and cached curvature data of one chart.

    Parameters:
    chart (Chart): a validated chart.
    """

    def __init__(self, chart):
        self.chart = chart
        self.n = chart.dimension
        self._actions = {}
        self._tachibana = {}
        self._endomorphisms = {}

    def build(self):
        """Compute the core members inside one span; returns self."""
        with my_tracer.start_span("curvature_suite") as span:
            span.set_attribute("chart", self.chart.name)
            span.set_attribute("dimension", self.n)
            for name in ("Gamma", "R", "S", "kappa", "P"):
                self.tensor(name)
            logger.info("curvature suite of %s: %d nonzero R components", self.chart.name, len(self.R.entries()))
        return self

    @property
    def g_matrix(self):
        return self.chart.metric

    @property
    def ginv_matrix(self):
        return self.chart.inverse

    @cached_property
    def g(self):
        return Tensor.from_matrix(self.chart.metric, name="g")

    @cached_property
    def ginv(self):
        return Tensor.from_matrix(self.chart.inverse, (True, True), name="ginv")

    @cached_property
    def metric_derivatives(self):
        n = self.n
        return [[[self.chart.metric[i][j].derivative(l) for j in range(n)] for i in range(n)] for l in range(n)]

    @cached_property
    def Gamma(self):
        """Gamma^k_ij = 1/2 g^{kl}(d_i g_jl + d_j g_il - d_l g_ij)."""
        n = self.n
        dg = self.metric_derivatives
        ginv = self.ginv_matrix
        lowered = {}
        for i in range(n):
            for j in range(i, n):
                for l in range(n):
                    value = Expr.sum([dg[i][j][l], dg[j][i][l], -dg[l][i][j]])
                    if value:
                        lowered[(i, j, l)] = value
        buckets = defaultdict(list)
        for (i, j, l), value in lowered.items():
            for k in range(n):
                if ginv[k][l]:
                    term = ginv[k][l] * value * Fraction(1, 2)
                    buckets[(k, i, j)].append(term)
                    if i != j:
                        buckets[(k, j, i)].append(term)
        return Tensor.from_buckets(n, (True, False, False), buckets, "Gamma")

    @cached_property
    def _gamma_by_upper(self):
        by_upper = defaultdict(list)
        for (k, i, j), value in self.Gamma.entries():
            by_upper[k].append((i, j, value))
        return by_upper

    @cached_property
    def calR(self):
        """calR[i,j,k,m] = sign * (d_i Gamma^m_jk - d_j Gamma^m_ik + Gamma^m_ip Gamma^p_jk - Gamma^m_jp Gamma^p_ik)."""
        n = self.n
        gamma = self.Gamma
        buckets = defaultdict(list)
        for (m, j, k), value in gamma.entries():
            for i in range(n):
                if i == j:
                    continue
                d = value.derivative(i)
                if d:
                    buckets[(i, j, k, m)].append(d * CURVATURE_SIGN)
                    buckets[(j, i, k, m)].append(-d * CURVATURE_SIGN)
        by_lower = defaultdict(list)
        for (m, i, p), value in gamma.entries():
            by_lower[(i, p)].append((m, value))
        for (p, j, k), inner in gamma.entries():
            for i in range(n):
                if i == j:
                    continue
                for m, outer_value in by_lower.get((i, p), ()):
                    term = outer_value * inner * CURVATURE_SIGN
                    buckets[(i, j, k, m)].append(term)
                    buckets[(j, i, k, m)].append(-term)
        return Tensor.from_buckets(n, (False, False, False, True), buckets, "calR")

    @cached_property
    def R(self):
        return ops.lower_index(self.calR, 3, self.g_matrix, "R")

    @cached_property
    def S(self):
        return self.ricci_of(self.R, "S")

    def ricci_of(self, D, name=None):
        """Contraction of a (0,4) tensor over slots 1 and 4."""
        return ops.contract(D, 0, 3, ginv=self.ginv_matrix, name=name or f"ric({D.name})")

    @cached_property
    def calS(self):
        return ops.raise_index(self.S, 1, self.ginv_matrix, "calS")

    @cached_property
    def S2(self):
        return ops.squared(self.S, self.ginv_matrix, "S2")

    @cached_property
    def kappa(self):
        return ops.contract(self.S, 0, 1, ginv=self.ginv_matrix, name="kappa")

    @cached_property
    def kappa2(self):
        return ops.contract(self.S2, 0, 1, ginv=self.ginv_matrix, name="kappa2")

    @property
    def scalar_curvature(self):
        return self.kappa.value()

    @cached_property
    def Z(self):
        return (self.S - self.g.scaled(self.scalar_curvature / self.n)).renamed("Z")

    @cached_property
    def rs_tensor(self):
        """R(X1, X2, X3, calS X4)."""
        buckets = defaultdict(list)
        by_row = defaultdict(list)
        for (l, m), value in self.calS.entries():
            by_row[m].append((l, value))
        for (i, j, k, m), value in self.R.entries():
            for l, s in by_row.get(m, ()):
                buckets[(i, j, k, l)].append(s * value)
        return Tensor.from_buckets(self.n, (False,) * 4, buckets, "RS")

    @cached_property
    def E(self):
        return ops.contract(self.rs_tensor, 0, 3, ginv=self.ginv_matrix, name="E")

    @cached_property
    def gg(self):
        return ops.kulkarni_nomizu(self.g, self.g, "g^g")

    @cached_property
    def gS(self):
        return ops.kulkarni_nomizu(self.g, self.S, "g^S")

    @cached_property
    def SS(self):
        return ops.kulkarni_nomizu(self.S, self.S, "S^S")

    @cached_property
    def G(self):
        return self.gg.scaled(Fraction(1, 2), "G")

    @cached_property
    def C(self):
        n = self.n
        kappa = self.scalar_curvature
        return (
            self.R - self.gS.scaled(Fraction(1, n - 2)) + self.gg.scaled(kappa * Fraction(1, 2 * (n - 1) * (n - 2)))
        ).renamed("C")

    @cached_property
    def W(self):
        n = self.n
        return (self.R - self.gg.scaled(self.scalar_curvature * Fraction(1, 2 * n * (n - 1)))).renamed("W")

    @cached_property
    def K(self):
        return (self.R - self.gS.scaled(Fraction(1, self.n - 2))).renamed("K")

    @cached_property
    def wedge_S(self):
        return ops.wedge_tensor(self.S, self.g_matrix, "wedge_S")

    @cached_property
    def P(self):
        """R - (S(X2,X3)g(X1,X4) - S(X1,X3)g(X2,X4))/(n-1)."""
        return (self.R - self.wedge_S.scaled(Fraction(1, self.n - 1))).renamed("P")

    @cached_property
    def calP(self):
        return ops.raise_index(self.P, 3, self.ginv_matrix, "calP")

    def covariant_derivative(self, T, name=None):
        """(nabla T)(X1..Xk; X) = d_X T(...) - sum_j T(..., nabla_X Xj, ...), derivative slot last."""
        if any(T.upper):
            raise TensorShapeError(f"covariant derivative needs a covariant tensor, {T.name} is not")
        n = self.n
        by_upper = self._gamma_by_upper
        buckets = defaultdict(list)
        for index, value in T.entries():
            for l in range(n):
                d = value.derivative(l)
                if d:
                    buckets[index + (l,)].append(d)
            for slot, m in enumerate(index):
                for l, a, gamma in by_upper.get(m, ()):
                    buckets[index[:slot] + (a,) + index[slot + 1 :] + (l,)].append(-(gamma * value))
        return Tensor.from_buckets(n, (False,) * (T.rank + 1), buckets, name or f"grad{T.name}")

    @cached_property
    def gradR(self):
        return self.covariant_derivative(self.R, "gradR")

    @cached_property
    def gradS(self):
        return self.covariant_derivative(self.S, "gradS")

    @cached_property
    def gradP(self):
        return self.covariant_derivative(self.P, "gradP")

    @cached_property
    def grad_g(self):
        return self.covariant_derivative(self.g, "gradg")

    def tensor(self, name):
        """A suite member by its vocabulary name."""
        if name not in VOCABULARY:
            raise UnknownNameError(f"unknown tensor {name!r}; known: {' '.join(VOCABULARY)}")
        return getattr(self, name)

    def endomorphism(self, name):
        if name not in self._endomorphisms:
            if name not in CURVATURE_NAMES:
                raise UnknownNameError(f"{name!r} is not a (0,4) curvature tensor")
            self._endomorphisms[name] = ops.Endomorphism.of_curvature(self.tensor(name), self.ginv_matrix)
        return self._endomorphisms[name]

    def action(self, D, H):
        """Cached D.H for vocabulary names, e.g. action("P", "calR")."""
        key = (D, H)
        if key not in self._actions:
            self._actions[key] = ops.endomorphism_action(self.endomorphism(D), self.tensor(H), f"{D}.{H}")
        return self._actions[key]

    def tachibana(self, A, H):
        """Cached Q(A,H) for A in {g, S} (or any symmetric vocabulary tensor)."""
        key = (A, H)
        if key not in self._tachibana:
            if A not in SYMMETRIC_NAMES:
                raise UnknownNameError(f"{A!r} is not a symmetric (0,2) tensor")
            self._tachibana[key] = ops.tachibana(self.tensor(A), self.tensor(H), f"Q({A},{H})")
        return self._tachibana[key]

    def constant_curvature_part(self):
        """kappa / (n(n-1)) G, the curvature tensor of constant curvature with the same kappa."""
        n = self.n
        return self.G.scaled(self.scalar_curvature * Fraction(1, n * (n - 1)), "R0")
