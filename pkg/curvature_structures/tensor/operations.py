"""
Operator toolkit on tensors: contractions, index gymnastics, Kulkarni-Nomizu products,
wedge endomorphisms, curvature actions D.H and Tachibana tensors Q(A, H).

``g`` and ``ginv`` are n x n nested lists of Expr (metric and inverse metric).
Sums are collected per target index and added once with :meth:`Expr.sum`.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass

from .tensor import Tensor, TensorGrade
from ..errors import TensorShapeError
from ..expr.expression import Expr

logger = logging.getLogger(__name__)


def _check_slot(T, slot):
    if not 0 <= slot < T.rank:
        raise TensorShapeError(f"slot {slot + 1} out of range for {T.name} of rank {T.rank}")


def _check_covariant(T, rank=None, what="tensor"):
    if any(T.upper):
        raise TensorShapeError(f"{T.name} must be covariant to be used as a {what}")
    if rank is not None and T.rank != rank:
        raise TensorShapeError(f"{T.name} must have {rank} slots, has {T.rank}")


def is_symmetric(A):
    return all(A[j, i] == value or (A[j, i] - value).is_zero() for (i, j), value in A.entries())


def _check_symmetric(A):
    _check_covariant(A, 2, "symmetric (0,2) tensor")
    if not is_symmetric(A):
        raise TensorShapeError(f"{A.name} is not symmetric")


def contract(T, slot_a, slot_b, g=None, ginv=None, name=None):
    """
    Contract two slots.

    Slots of opposite variance are summed directly; two covariant slots use ginv and two
    contravariant slots use g.
    """
    _check_slot(T, slot_a)
    _check_slot(T, slot_b)
    if slot_a == slot_b:
        raise TensorShapeError("cannot contract a slot with itself")
    a, b = sorted((slot_a, slot_b))
    both_lower = not T.upper[a] and not T.upper[b]
    both_upper = T.upper[a] and T.upper[b]
    pairing = ginv if both_lower else g if both_upper else None
    if (both_lower or both_upper) and pairing is None:
        raise TensorShapeError("contraction of two slots of equal variance needs the metric")
    upper = tuple(u for k, u in enumerate(T.upper) if k not in (a, b))
    buckets = defaultdict(list)
    for index, value in T.entries():
        rest = tuple(i for k, i in enumerate(index) if k not in (a, b))
        if pairing is None:
            if index[a] == index[b]:
                buckets[rest].append(value)
        else:
            weight = pairing[index[a]][index[b]]
            if weight:
                buckets[rest].append(weight * value)
    if not upper:
        return Tensor.scalar(Expr.sum(buckets.get((), [])), name or f"tr({T.name})")
    return Tensor.from_buckets(T.dimension, upper, buckets, name or f"tr({T.name})")


def _move(T, slot, matrix, to_upper, name):
    _check_slot(T, slot)
    if T.upper[slot] == to_upper:
        raise TensorShapeError(f"slot {slot + 1} of {T.name} already has the requested variance")
    n = T.dimension
    buckets = defaultdict(list)
    for index, value in T.entries():
        m = index[slot]
        for i in range(n):
            weight = matrix[i][m]
            if weight:
                buckets[index[:slot] + (i,) + index[slot + 1 :]].append(weight * value)
    upper = T.upper[:slot] + (to_upper,) + T.upper[slot + 1 :]
    return Tensor.from_buckets(n, upper, buckets, name, T.operator_pair)


def raise_index(T, slot, ginv, name=None):
    """Raise a covariant slot with g^{-1}."""
    return _move(T, slot, ginv, True, name or T.name)


def lower_index(T, slot, g, name=None):
    """Lower a contravariant slot with g."""
    return _move(T, slot, g, False, name or T.name)


def outer(A, B, name=None):
    n = A.dimension
    buckets = {}
    for ia, va in A.entries():
        for ib, vb in B.entries():
            buckets[ia + ib] = [va * vb]
    return Tensor.from_buckets(n, A.upper + B.upper, buckets, name or f"{A.name}*{B.name}")


def kulkarni_nomizu_general(A, H, name=None):
    """
    (A^H)(X1,X2,X3,X4,...) = A(X1,X4)H(X2,X3,...) + A(X2,X3)H(X1,X4,...)
                             - A(X1,X3)H(X2,X4,...) - A(X2,X4)H(X1,X3,...)

    H's first two slots take part; its remaining slots trail.
    """
    _check_symmetric(A)
    _check_covariant(H)
    if H.rank < 2:
        raise TensorShapeError(f"Kulkarni-Nomizu product needs at least two slots, {H.name} has {H.rank}")
    buckets = defaultdict(list)
    for (p, q), a in A.entries():
        for index, h in H.entries():
            r, s, rest = index[0], index[1], index[2:]
            value = a * h
            buckets[(p, r, s, q) + rest].append(value)
            buckets[(r, p, q, s) + rest].append(value)
            buckets[(p, r, q, s) + rest].append(-value)
            buckets[(r, p, s, q) + rest].append(-value)
    return Tensor.from_buckets(A.dimension, (False,) * (H.rank + 2), buckets, name or f"{A.name}^{H.name}")


def kulkarni_nomizu(A, E, name=None):
    """Kulkarni-Nomizu product of two symmetric (0,2) tensors; a generalized curvature tensor."""
    _check_symmetric(E)
    return kulkarni_nomizu_general(A, E, name)


def wedge_general(H, g, name=None):
    """
    The tensor of X ^_H Y acting on Z1: for a (0,k) H,

        T(X, Y, Z1, Z2, Z3, ...) = H(Y, Z1, Z3, ...) g(X, Z2) - H(X, Z1, Z3, ...) g(Y, Z2).
    """
    _check_covariant(H)
    if H.rank < 2:
        raise TensorShapeError(f"wedge tensor needs at least two slots, {H.name} has {H.rank}")
    n = H.dimension
    buckets = defaultdict(list)
    for index, h in H.entries():
        first, second, rest = index[0], index[1], index[2:]
        for p in range(n):
            for q in range(n):
                w = g[p][q]
                if not w:
                    continue
                value = h * w
                buckets[(p, first, second, q) + rest].append(value)
                buckets[(first, p, second, q) + rest].append(-value)
    return Tensor.from_buckets(n, (False,) * (H.rank + 2), buckets, name or f"wedge({H.name})")


def wedge_tensor(A, g, name=None):
    """(0,4) tensor of the endomorphism X ^_A Y: A(X2,X3)g(X1,X4) - A(X1,X3)g(X2,X4)."""
    _check_symmetric(A)
    return wedge_general(A, g, name)


class Endomorphism:
    """
    Field of endomorphisms L(X, Y) given by its matrix entries L[x, y, a, b], the
    b-component of L(d_x, d_y) d_a.
    """

    def __init__(self, dimension, entries, name):
        self.dimension = dimension
        self.name = name
        self.by_source = defaultdict(list)
        self.by_target = defaultdict(list)
        for (x, y, a, b), value in entries.items():
            if value:
                self.by_source[(x, y, a)].append((b, value))
                self.by_target[(x, y, b)].append((a, value))
        self.pairs = sorted({(x, y) for (x, y, _, _) in entries})

    @classmethod
    def of_curvature(cls, D, ginv):
        """The endomorphism of a (0,4) tensor, raising its last slot."""
        _check_covariant(D, 4, "curvature tensor")
        raised = raise_index(D, 3, ginv)
        return cls(D.dimension, dict(raised.entries()), D.name)

    @classmethod
    def of_wedge(cls, A):
        """X ^_A Y, sending Z to A(Y,Z)X - A(X,Z)Y."""
        _check_symmetric(A)
        n = A.dimension
        entries = defaultdict(list)
        for (i, a), value in A.entries():
            for other in range(n):
                if other == i:
                    continue
                entries[(other, i, a, other)].append(value)
                entries[(i, other, a, other)].append(-value)
        return cls(n, {key: Expr.sum(items) for key, items in entries.items()}, f"^{A.name}")


def endomorphism_action(L, H, name=None):
    """
    Derivation action (L.H)(Z1, ..., Zk, X, Y) with the operator pair trailing.

    Covariant slots contribute -H(..., L(X,Y)Zj, ...); an upper slot contributes
    +L(X,Y)(H(...)).
    """
    if sum(H.upper) > 1:
        raise TensorShapeError(f"{H.name} has more than one contravariant slot")
    buckets = defaultdict(list)
    for index, h in H.entries():
        for slot, m in enumerate(index):
            head, tail = index[:slot], index[slot + 1 :]
            for x, y in L.pairs:
                if H.upper[slot]:
                    for b, w in L.by_source.get((x, y, m), ()):
                        buckets[head + (b,) + tail + (x, y)].append(w * h)
                else:
                    for a, w in L.by_target.get((x, y, m), ()):
                        buckets[head + (a,) + tail + (x, y)].append(-(w * h))
    upper = H.upper + (False, False)
    return Tensor.from_buckets(H.dimension, upper, buckets, name or f"{L.name}.{H.name}", operator_pair=True)


def curvature_action(D, H, ginv, name=None):
    """D.H for a (0,4) tensor D (generalized curvature tensor or not) and H of valence (0,k) or (1,k-1)."""
    return endomorphism_action(Endomorphism.of_curvature(D, ginv), H, name or f"{D.name}.{H.name}")


def tachibana(A, H, name=None):
    """Q(A,H): the action of X ^_A Y on H, operator pair trailing."""
    return endomorphism_action(Endomorphism.of_wedge(A), H, name or f"Q({A.name},{H.name})")


def squared(A, ginv, name=None):
    """A^2_ij = A_ik g^{kl} A_lj."""
    _check_symmetric(A)
    n = A.dimension
    rows = defaultdict(list)
    for (i, k), value in A.entries():
        rows[i].append((k, value))
    buckets = defaultdict(list)
    for i in range(n):
        for k, aik in rows[i]:
            for l in range(n):
                w = ginv[k][l]
                if not w:
                    continue
                left = aik * w
                for j, alj in rows[l]:
                    buckets[(i, j)].append(left * alj)
    return Tensor.from_buckets(n, (False, False), buckets, name or f"{A.name}2")


def cyclic_pair_sum(T, name=None):
    """T(X1..X6) + T(X3,X4,X5,X6,X1,X2) + T(X5,X6,X1,X2,X3,X4) for a (0,6) tensor."""
    if T.rank != 6:
        raise TensorShapeError(f"cyclic pair sum needs six slots, {T.name} has {T.rank}")
    return (T + T.permute((2, 3, 4, 5, 0, 1)) + T.permute((4, 5, 0, 1, 2, 3))).renamed(name or f"cyc({T.name})")


def cyclic_sum(T, orders, name=None):
    """T plus its permutations by each of the given slot orders."""
    total = T
    for order in orders:
        total = total + T.permute(order)
    return total.renamed(name or f"cyc({T.name})")


@dataclass
class GctReport:
    skew12: TensorGrade
    first_bianchi: TensorGrade
    pair_symmetry: TensorGrade
    proper: TensorGrade = None

    @property
    def is_generalized_curvature(self):
        return self.skew12.is_zero and self.first_bianchi.is_zero and self.pair_symmetry.is_zero


def check_gct(D, tester, nabla=None):
    """
    Grade the generalized curvature tensor axioms of a (0,4) tensor.

    Parameters:
    D (Tensor): the (0,4) tensor.
    tester (ZeroTester): zero oracle.
    nabla (Tensor): optional covariant derivative of D, derivative slot last; when
        given, the second Bianchi sum is graded as ``proper``.
    """
    _check_covariant(D, 4, "curvature tensor")
    skew = D + D.permute((1, 0, 2, 3))
    bianchi = cyclic_sum(D, [(1, 2, 0, 3), (2, 0, 1, 3)])
    pairs = D - D.permute((2, 3, 0, 1))
    proper = second_bianchi_sum(nabla).grade(tester) if nabla is not None else None
    return GctReport(skew.grade(tester), bianchi.grade(tester), pairs.grade(tester), proper)


def second_bianchi_sum(nabla):
    """(nabla_X D)(Y,Z,U,V) + (nabla_Y D)(Z,X,U,V) + (nabla_Z D)(X,Y,U,V) for nabla D with the derivative slot last."""
    front = nabla.permute((1, 2, 3, 4, 0))
    return cyclic_sum(front, [(1, 2, 0, 3, 4), (2, 0, 1, 3, 4)], name=f"bianchi2({nabla.name})")
